#include "measurement/measurement.hpp"

#include <cmath>

#include "core/special.hpp"

namespace qfps {
namespace {

constexpr double kBlockTol = 1e-10;

void validate_config(const MeasurementConfig& cfg) {
  if (cfg.alpha < 0.0)
    throw Error(errc::invalid_argument, "measurement: alpha must be non-negative");
  if (cfg.t_m < 0.0) throw Error(errc::invalid_argument, "measurement: t_m must be non-negative");
  if (cfg.chi_sign != 1 && cfg.chi_sign != -1)
    throw Error(errc::invalid_argument, "measurement: chi_sign must be +1 or -1");
}

void validate_state(const ComplexMatrix& rho0) {
  if (rho0.rows() != rho0.cols() || (rho0.rows() != 2 && rho0.rows() != 4))
    throw Error(errc::dim_mismatch, "measurement: rho0 must be 2x2 or 4x4");
  if (!is_hermitian(rho0)) throw Error(errc::not_a_state, "measurement: rho0 not Hermitian");
  if (std::abs(rho0.trace().real() - 1.0) > 1e-8 || std::abs(rho0.trace().imag()) > 1e-10)
    throw Error(errc::not_a_state, "measurement: rho0 trace must be 1");
}

int fock_dim_of(const ComplexMatrix& h, int dq, const MeasurementConfig& cfg) {
  if (h.rows() != h.cols()) throw Error(errc::dim_mismatch, "measurement: h must be square");
  int nf = cfg.space.dim();
  if (h.rows() != static_cast<Eigen::Index>(dq) * nf)
    throw Error(errc::dim_mismatch, "measurement: h dimension != qubit dim * Fock dim");
  return nf;
}

// raw coherent amplitudes <n|alpha> (truncation policy lives in fock)
ComplexVector raw_coherent(const FockSpace& space, double alpha, double* tail) {
  CoherentState st = coherent_state(space, alpha);
  if (tail != nullptr) *tail = std::max(0.0, 1.0 - st.pre_norm);
  return st.amp * std::sqrt(st.pre_norm);
}

ComplexMatrix qubit_block(const ComplexMatrix& h, int dq, int nf, int photon) {
  ComplexMatrix block(dq, dq);
  for (int i = 0; i < dq; ++i)
    for (int j = 0; j < dq; ++j) block(i, j) = h(i * nf + photon, j * nf + photon);
  return block;
}

ComplexMatrix trace_out_first_qubit(const ComplexMatrix& rho4) {
  return partial_trace(rho4, {2, 2}, {1});
}

}  // namespace

complexd g_coeff(int m, int n, double alpha, int x) {
  if (m < 0 || n < 0) throw Error(errc::invalid_argument, "g_coeff: indices must be >= 0");
  if (x != 1 && x != -1) throw Error(errc::invalid_argument, "g_coeff: x must be +1 or -1");
  if (alpha < 0.0) throw Error(errc::invalid_argument, "g_coeff: alpha must be non-negative");
  if (alpha == 0.0) return (m == 0 && n == 0) ? complexd(0.5, 0.0) : complexd(0.0, 0.0);

  const double log_alpha = std::log(alpha);
  complexd value(0.0, 0.0);
  if (m == n) value += 0.5 * std::exp(-alpha * alpha + 2.0 * n * log_alpha - log_factorial(n));
  if (is_odd(m - n)) {
    double mag = std::exp(-alpha * alpha + (n + m) * log_alpha +
                          std::lgamma(0.5 * (m + n) + 1.0) - log_factorial(m) -
                          log_factorial(n)) /
                 static_cast<double>(m - n);
    value += complexd(0.0, -x / M_PI) * mag;
  }
  return value;
}

ComplexMatrix povm_element(const FockSpace& space, int x) {
  if (x != 1 && x != -1) throw Error(errc::invalid_argument, "povm_element: x must be +1 or -1");
  const int d = space.dim();
  ComplexMatrix e = ComplexMatrix::Zero(d, d);
  for (int m = 0; m < d; ++m) {
    e(m, m) = 0.5;
    for (int n = 0; n < d; ++n) {
      if (!is_odd(m - n)) continue;
      double mag = std::exp(std::lgamma(0.5 * (m + n) + 1.0) - 0.5 * log_factorial(m) -
                            0.5 * log_factorial(n)) /
                   static_cast<double>(m - n);
      e(m, n) += complexd(0.0, -x / M_PI) * mag;
    }
  }
  return e;
}

ChannelResult apply_channel_fast(const ComplexMatrix& h, const ComplexMatrix& rho0,
                                 const MeasurementConfig& cfg) {
  validate_config(cfg);
  validate_state(rho0);
  const int dq = static_cast<int>(rho0.rows());
  const int nf = fock_dim_of(h, dq, cfg);

  // the factorization into K_n blocks only exists when h leaves every
  // photon sector invariant
  for (int i = 0; i < h.rows(); ++i) {
    for (int j = 0; j < h.cols(); ++j) {
      int dn = (i % nf) - (j % nf);
      if (dn != 0 && std::abs(h(i, j)) * std::abs(dn) > kBlockTol)
        throw Error(errc::not_photon_block_diagonal,
                    "apply_channel_fast: h does not commute with the photon number; "
                    "use apply_channel_oracle");
    }
  }

  ChannelResult out;
  ComplexVector amps = raw_coherent(cfg.space, cfg.alpha, &out.truncation_tail);

  std::vector<ComplexMatrix> k_rho(nf);
  std::vector<ComplexMatrix> k_adj(nf);
  for (int n = 0; n < nf; ++n) {
    ComplexMatrix kn = evolve(qubit_block(h, dq, nf, n), cfg.t_m);
    k_rho[n] = kn * rho0;
    k_adj[n] = kn.adjoint();
  }

  for (int sign : {+1, -1}) {
    int x = sign * cfg.chi_sign;
    ComplexMatrix acc = ComplexMatrix::Zero(dq, dq);
    for (int m = 0; m < nf; ++m) {
      ComplexMatrix inner = ComplexMatrix::Zero(dq, dq);
      for (int n = 0; n < nf; ++n) {
        complexd g = g_coeff(m, n, cfg.alpha, x);
        if (g != complexd(0.0, 0.0)) inner += g * k_rho[n];
      }
      acc += inner * k_adj[m];
    }
    ComplexMatrix post = (dq == 4) ? trace_out_first_qubit(acc) : acc;
    if (sign > 0) {
      out.post_state_plus = post;
      out.p_plus = post.trace().real();
    } else {
      out.post_state_minus = post;
      out.p_minus = post.trace().real();
    }
  }
  return out;
}

ChannelResult apply_channel_oracle(const ComplexMatrix& h, const ComplexMatrix& rho0,
                                   const MeasurementConfig& cfg) {
  validate_config(cfg);
  validate_state(rho0);
  const int dq = static_cast<int>(rho0.rows());
  const int nf = fock_dim_of(h, dq, cfg);
  if (!is_hermitian(h)) throw Error(errc::not_hermitian, "apply_channel_oracle: h not Hermitian");

  ChannelResult out;
  ComplexVector amps = raw_coherent(cfg.space, cfg.alpha, &out.truncation_tail);
  ComplexMatrix rho_field = amps * amps.adjoint();
  ComplexMatrix rho_full = kron(rho0, rho_field);

  ComplexMatrix u = evolve(h, cfg.t_m);
  ComplexMatrix rho_t = u * rho_full * u.adjoint();

  ComplexMatrix id_q = ComplexMatrix::Identity(dq, dq);
  for (int sign : {+1, -1}) {
    int x = sign * cfg.chi_sign;
    ComplexMatrix weighted = kron(id_q, povm_element(cfg.space, x)) * rho_t;
    ComplexMatrix post = partial_trace(weighted, {dq, nf}, {0});
    if (dq == 4) post = trace_out_first_qubit(post);
    if (sign > 0) {
      out.post_state_plus = post;
      out.p_plus = post.trace().real();
    } else {
      out.post_state_minus = post;
      out.p_minus = post.trace().real();
    }
  }
  return out;
}

double fidelity(const ComplexVector& psi0, const ComplexMatrix& sigma, bool allow_unnormalized) {
  if (sigma.rows() != sigma.cols() || sigma.rows() != psi0.size())
    throw Error(errc::dim_mismatch, "fidelity: dimension mismatch");
  if (std::abs(psi0.norm() - 1.0) > 1e-8)
    throw Error(errc::not_a_state, "fidelity: psi0 must be normalized");
  if (!is_hermitian(sigma)) throw Error(errc::not_a_state, "fidelity: sigma not Hermitian");
  if (!allow_unnormalized && std::abs(sigma.trace().real() - 1.0) > 1e-8)
    throw Error(errc::not_a_state, "fidelity: sigma trace must be 1 (or pass the flag)");
  return (psi0.adjoint() * sigma * psi0).value().real();
}

ProtocolResult run_protocol(const ComplexMatrix& h, const ComplexMatrix& rho0,
                            const ComplexVector& psi_ref, const MeasurementConfig& cfg,
                            bool use_oracle) {
  ProtocolResult res;
  res.channel =
      use_oracle ? apply_channel_oracle(h, rho0, cfg) : apply_channel_fast(h, rho0, cfg);

  res.fidelity_plus = fidelity(psi_ref, res.channel.post_state_plus, true);
  res.fidelity_minus = fidelity(psi_ref, res.channel.post_state_minus, true);
  res.fidelity_nonselective =
      fidelity(psi_ref, res.channel.post_state_plus + res.channel.post_state_minus, true);

  // the pointer rotates as alpha e^{-iGt} with G the mean shift per photon,
  // so its half-plane at t_m = pi/(2|chi|) is fixed by the sign of G
  const int dq = static_cast<int>(rho0.rows());
  const int nf = fock_dim_of(h, dq, cfg);
  ComplexMatrix slope = qubit_block(h, dq, nf, 1) - qubit_block(h, dq, nf, 0);
  double g_mean = (slope * rho0).trace().real();
  int x_star = (g_mean < 0.0) ? -1 : +1;
  res.matched_is_plus = (x_star == cfg.chi_sign);
  res.fidelity_matched = res.matched_is_plus ? res.fidelity_plus : res.fidelity_minus;
  return res;
}

ProtocolResult run_protocol(const ComplexMatrix& h, const ComplexVector& psi0,
                            const MeasurementConfig& cfg, bool use_oracle) {
  ComplexMatrix rho0 = psi0 * psi0.adjoint();
  return run_protocol(h, rho0, psi0, cfg, use_oracle);
}

ComplexVector default_initial_state() {
  ComplexVector v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

std::vector<ComplexVector> cardinal_states() {
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<ComplexVector> states(6, ComplexVector(2));
  states[0] << 1.0, 0.0;                          // z+
  states[1] << 0.0, 1.0;                          // z-
  states[2] << s, s;                              // x+
  states[3] << s, -s;                             // x-
  states[4] << s, complexd(0.0, 1.0) * s;         // y+
  states[5] << s, complexd(0.0, -1.0) * s;        // y-
  return states;
}

}  // namespace qfps
