#include "core/fock.hpp"

#include "core/special.hpp"

#include <cmath>

namespace qfps {

FockSpace::FockSpace(int n_levels) : n_max(n_levels) {
  if (n_levels < 2)
    throw Error(errc::invalid_argument, "FockSpace: need at least two levels");
}

Ladder ladder_ops(const FockSpace& space) {
  const int d = space.dim();
  Ladder ops;
  ops.a = ComplexMatrix::Zero(d, d);
  for (int n = 1; n < d; ++n) ops.a(n - 1, n) = std::sqrt(static_cast<double>(n));
  ops.adag = ops.a.adjoint();
  ops.n = ops.adag * ops.a;
  return ops;
}

int coherent_n_max(double alpha) {
  double a = std::abs(alpha);
  return static_cast<int>(std::ceil(a * a + 8.0 * a + 10.0));
}

CoherentState coherent_state(const FockSpace& space, double alpha) {
  if (alpha < 0.0)
    throw Error(errc::invalid_argument, "coherent_state: alpha must be non-negative");
  const int d = space.dim();
  CoherentState st;
  st.amp = ComplexVector::Zero(d);
  if (alpha == 0.0) {
    st.amp(0) = 1.0;
    st.pre_norm = 1.0;
    st.truncation_warning = false;
    return st;
  }
  const double log_alpha = std::log(alpha);
  double norm2 = 0.0;
  for (int n = 0; n < d; ++n) {
    double log_c = -0.5 * alpha * alpha + n * log_alpha - 0.5 * log_factorial(n);
    double c = std::exp(log_c);
    st.amp(n) = c;
    norm2 += c * c;
  }
  st.pre_norm = norm2;
  st.truncation_warning = d < coherent_n_max(alpha);
  if (norm2 < 1.0 - 1e-6)
    throw Error(errc::truncation_too_small,
                "coherent_state: truncated weight below 1 - 1e-6, increase n_max");
  st.amp /= std::sqrt(norm2);
  return st;
}

ComplexMatrix displacement(const FockSpace& space, complexd nu, bool* truncation_warning) {
  Ladder ops = ladder_ops(space);
  double mag = std::abs(nu);
  if (truncation_warning)
    *truncation_warning = (mag * mag + 6.0 * mag + 8.0) > space.n_max;
  ComplexMatrix gen = nu * ops.adag - std::conj(nu) * ops.a;
  return exp_antihermitian(gen);
}

}  // namespace qfps
