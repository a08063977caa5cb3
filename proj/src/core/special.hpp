#pragma once

namespace qfps {

// Standard normal CDF.
double normal_cdf(double x);

// Laguerre polynomial L_n(x) by the three-term recurrence.
double laguerre(int n, double x);

// log(n!)
double log_factorial(int n);

// true when k is odd
bool is_odd(int k);

}  // namespace qfps
