#include "jcm/jcm.hpp"

#include <cmath>

namespace qfps {
namespace {

constexpr double kRwaThreshold = 0.2;

ComplexMatrix photon_number_plus_half(const FockSpace& space) {
  Ladder l = ladder_ops(space);
  return l.n + 0.5 * ComplexMatrix::Identity(space.dim(), space.dim());
}

}  // namespace

double EffectiveQubitParams::delta_eff() const { return base.delta * std::exp(-eta); }

double EffectiveQubitParams::eps_eff() const { return eps_scale * base.epsilon; }

double EffectiveQubitParams::omega_eff() const { return std::hypot(eps_eff(), delta_eff()); }

double EffectiveQubitParams::theta_eff() const { return mixing_angle(effective()); }

QubitParams EffectiveQubitParams::effective() const { return {eps_eff(), delta_eff()}; }

EffectiveQubitParams effective_qubit(const QubitParams& q, double eta, double eps_scale) {
  if (eta < 0.0) throw Error(errc::invalid_argument, "effective_qubit: eta must be >= 0");
  if (eps_scale < 1.0)
    throw Error(errc::invalid_argument, "effective_qubit: eps_scale must be >= 1");
  return {q, eta, eps_scale};
}

DispersiveParams dispersive_params(const EffectiveQubitParams& eq, const ResonatorParams& r,
                                   double g, bool lambda_wrt_tunneling) {
  double delta = eq.omega_eff() - r.omega_r;
  if (delta == 0.0)
    throw Error(errc::zero_detuning, "dispersive_params: qubit resonant with resonator");
  double s = std::sin(eq.theta_eff());
  DispersiveParams out;
  out.g = g;
  out.detuning = delta;
  out.chi = g * g * s * s / delta;
  double denom = lambda_wrt_tunneling ? eq.delta_eff() : delta;
  if (denom == 0.0)
    throw Error(errc::zero_detuning, "dispersive_params: lambda denominator vanishes");
  out.lambda = g * std::abs(s) / denom;
  out.rwa_valid = std::abs(out.lambda) <= kRwaThreshold;
  return out;
}

ComplexMatrix rabi_hamiltonian(const QubitParams& q, const ResonatorParams& r, double g) {
  Ladder l = ladder_ops(r.space);
  int nf = r.space.dim();
  ComplexMatrix idf = ComplexMatrix::Identity(nf, nf);
  double wq = qubit_freq(q);
  return 0.5 * wq * kron(pauli_z(), idf) + r.omega_r * kron(id2(), photon_number_plus_half(r.space)) +
         g * kron(pauli_x(), l.a + l.adag);
}

ComplexMatrix jc_hamiltonian(const QubitParams& q, const ResonatorParams& r, double g) {
  Ladder l = ladder_ops(r.space);
  int nf = r.space.dim();
  ComplexMatrix idf = ComplexMatrix::Identity(nf, nf);
  double wq = qubit_freq(q);
  ComplexMatrix sp = ComplexMatrix::Zero(2, 2);
  sp(0, 1) = 1.0;
  ComplexMatrix sm = sp.adjoint();
  return 0.5 * wq * kron(pauli_z(), idf) + r.omega_r * kron(id2(), photon_number_plus_half(r.space)) +
         g * (kron(sp, l.a) + kron(sm, l.adag));
}

JcDressedStates jc_dressed_states(int n, double delta, double omega0) {
  if (n < 0) throw Error(errc::invalid_argument, "jc_dressed_states: n must be >= 0");
  double coupling = omega0 * std::sqrt(static_cast<double>(n) + 1.0);
  if (delta == 0.0 && coupling == 0.0)
    throw Error(errc::degenerate_qubit, "jc_dressed_states: doublet is degenerate");
  JcDressedStates out;
  out.theta_n = std::atan2(coupling, delta);
  double c = std::cos(0.5 * out.theta_n);
  double s = std::sin(0.5 * out.theta_n);
  out.plus << c, s;
  out.minus << -s, c;
  return out;
}

ComplexMatrix dispersive_hamiltonian(const QubitParams& q, const ResonatorParams& r, double g,
                                     bool* rwa_warning) {
  double wq = qubit_freq(q);
  double delta = wq - r.omega_r;
  if (delta == 0.0)
    throw Error(errc::zero_detuning, "dispersive_hamiltonian: qubit resonant with resonator");
  double chi = g * g / delta;
  if (rwa_warning != nullptr) *rwa_warning = std::abs(g / delta) > kRwaThreshold;
  int nf = r.space.dim();
  ComplexMatrix idf = ComplexMatrix::Identity(nf, nf);
  ComplexMatrix nph = photon_number_plus_half(r.space);
  return r.omega_r * kron(id2(), nph) + chi * kron(pauli_z(), nph) +
         0.5 * wq * kron(pauli_z(), idf);
}

ComplexMatrix single_qubit_dispersive(const EffectiveQubitParams& eq, const ResonatorParams& r,
                                      double g, BasisTag basis, bool* rwa_warning,
                                      bool drop_static) {
  DispersiveParams dp = dispersive_params(eq, r, g);
  if (rwa_warning != nullptr) *rwa_warning = !dp.rwa_valid;
  int nf = r.space.dim();
  ComplexMatrix idf = ComplexMatrix::Identity(nf, nf);
  ComplexMatrix scalar = dp.chi * photon_number_plus_half(r.space);
  if (!drop_static) scalar += 0.5 * dp.detuning * idf;
  ComplexMatrix qubit_op;
  if (basis == BasisTag::Flux) {
    double th = eq.theta_eff();
    qubit_op = std::cos(th) * pauli_z() + std::sin(th) * pauli_x();
  } else {
    qubit_op = pauli_z();
  }
  return -kron(qubit_op, scalar);
}

DriveEquivalenceReport drive_equivalence_check(const EffectiveQubitParams& eq,
                                               const ResonatorParams& r, double g, double eps_d,
                                               double omega_d) {
  if (omega_d <= 0.0)
    throw Error(errc::invalid_argument, "drive_equivalence_check: omega_d must be > 0");
  (void)eps_d;  // removed exactly by the displacement transformation
  DispersiveParams dp = dispersive_params(eq, r, g);

  Ladder l = ladder_ops(r.space);
  int nf = r.space.dim();
  ComplexMatrix idf = ComplexMatrix::Identity(nf, nf);

  DriveEquivalenceReport rep;
  rep.delta_r = r.omega_r - omega_d;

  // Reduced Hamiltonian in the drive frame, assembled from its own closed
  // form: both the resonator and the qubit detunings are taken against
  // omega_d rather than omega_r.
  double delta_q_drive = eq.omega_eff() - omega_d;
  ComplexMatrix driven = rep.delta_r * kron(id2(), l.n) -
                         kron(pauli_z(), 0.5 * delta_q_drive * idf +
                                             dp.chi * photon_number_plus_half(r.space));

  ComplexMatrix undriven = single_qubit_dispersive(eq, r, g, BasisTag::EnergyQ2);
  ComplexMatrix frame_offset =
      rep.delta_r * (kron(id2(), l.n) - 0.5 * kron(pauli_z(), idf));

  rep.max_deviation = (driven - undriven - frame_offset).cwiseAbs().maxCoeff();
  rep.equivalent = rep.max_deviation <= 1e-10;
  return rep;
}

}  // namespace qfps
