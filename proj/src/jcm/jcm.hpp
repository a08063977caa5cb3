#pragma once

#include "bases/bases.hpp"
#include "core/fock.hpp"

namespace qfps {

struct ResonatorParams {
  double omega_r;
  FockSpace space;
};

// Flux qubit after its QFP latched: tunneling suppressed by e^{-eta}, bias
// amplified by the persistent-current ratio of the QFP loop.
struct EffectiveQubitParams {
  QubitParams base;
  double eta = 0.0;
  double eps_scale = 1.0;

  double delta_eff() const;
  double eps_eff() const;
  double omega_eff() const;
  double theta_eff() const;
  QubitParams effective() const;  // (eps_eff, delta_eff) as a plain qubit
};

EffectiveQubitParams effective_qubit(const QubitParams& q, double eta, double eps_scale);

// chi and the smallness parameter of the qubit-resonator reduction.
struct DispersiveParams {
  double g = 0.0;
  double detuning = 0.0;  // omega_(q,eff) - omega_r
  double chi = 0.0;       // g^2 sin^2(theta_eff) / detuning
  double lambda = 0.0;    // g |sin(theta_eff)| / detuning
  bool rwa_valid = true;  // |lambda| <= 0.2
};

// lambda_wrt_tunneling swaps the lambda denominator from the detuning to
// the effective tunneling amplitude; chi is never affected.
DispersiveParams dispersive_params(const EffectiveQubitParams& eq, const ResonatorParams& r,
                                   double g, bool lambda_wrt_tunneling = false);

// Full qubit-resonator coupling before any rotating-wave step:
//   omega_q/2 sz + omega_r (a^dag a + 1/2) + g sx (a + a^dag)
// on qubit (x) Fock ordering, omega_q = sqrt(eps^2 + delta^2).
ComplexMatrix rabi_hamiltonian(const QubitParams& q, const ResonatorParams& r, double g);

// Excitation-conserving form with g (s+ a + s- a^dag) in place of the sx
// coupling. Block eigenvalues: omega_r (n+1) +- sqrt(delta^2 + 4g^2(n+1))/2.
ComplexMatrix jc_hamiltonian(const QubitParams& q, const ResonatorParams& r, double g);

struct JcDressedStates {
  double theta_n = 0.0;
  Eigen::Vector2cd plus;   // coefficients over {|e,n>, |g,n+1>}
  Eigen::Vector2cd minus;
};

// Mixing of the n-th excitation doublet: tan(theta_n) = omega0 sqrt(n+1) / delta.
// Throws degenerate_qubit when delta and omega0 both vanish.
JcDressedStates jc_dressed_states(int n, double delta, double omega0);

// Second-order reduction of the JC model:
//   (omega_r + chi sz)(a^dag a + 1/2) + omega_q/2 sz,  chi = g^2/delta.
// Commutes with both sz and the photon number by construction. Sets
// *rwa_warning when g/|delta| exceeds the documented 0.2 threshold.
ComplexMatrix dispersive_hamiltonian(const QubitParams& q, const ResonatorParams& r, double g,
                                     bool* rwa_warning = nullptr);

// Readout Hamiltonian of the latched qubit in the frame rotating at omega_r:
//   energy basis: -[delta/2 + chi (a^dag a + 1/2)] sz
//   flux basis:   same scalar times [cos(theta_eff) sz + sin(theta_eff) sx]
// drop_static removes the photon-independent delta/2 part (measurement
// frame in which only the chi back-action acts on the qubit).
ComplexMatrix single_qubit_dispersive(const EffectiveQubitParams& eq, const ResonatorParams& r,
                                      double g, BasisTag basis, bool* rwa_warning = nullptr,
                                      bool drop_static = false);

struct DriveEquivalenceReport {
  double delta_r = 0.0;        // omega_r - omega_d
  double max_deviation = 0.0;  // driven form vs undriven form + frame offset
  bool equivalent = false;     // max_deviation <= 1e-10
};

// Rebuilds the reduced Hamiltonian of the externally driven resonator in
// the drive frame and compares it against the undriven dispersive form.
// The two differ exactly by delta_r (a^dag a - sz/2); at omega_d = omega_r
// they coincide. The drive amplitude eps_d is displaced away entirely and
// never appears in the reduced dynamics.
DriveEquivalenceReport drive_equivalence_check(const EffectiveQubitParams& eq,
                                               const ResonatorParams& r, double g, double eps_d,
                                               double omega_d);

}  // namespace qfps
