#include "core/special.hpp"

#include "core/linalg.hpp"

#include <cmath>

namespace qfps {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double laguerre(int n, double x) {
  if (n < 0) throw Error(errc::invalid_argument, "laguerre: order must be non-negative");
  if (n == 0) return 1.0;
  double lm1 = 1.0;        // L_0
  double l = 1.0 - x;      // L_1
  for (int k = 1; k < n; ++k) {
    double lp1 = ((2.0 * k + 1.0 - x) * l - k * lm1) / (k + 1.0);
    lm1 = l;
    l = lp1;
  }
  return l;
}

double log_factorial(int n) {
  if (n < 0) throw Error(errc::invalid_argument, "log_factorial: negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

bool is_odd(int k) { return (k % 2) != 0; }

}  // namespace qfps
