#pragma once

#include <cmath>
#include <cstdint>

namespace qkds::math {

/// e^x - 1 - x without cancellation near zero.
inline double expm1_minus_x(double x) {
  if (std::abs(x) < 1e-2) {
    return x * x *
           (1.0 / 2 + x * (1.0 / 6 + x * (1.0 / 24 + x * (1.0 / 120 + x * (1.0 / 720 + x / 5040)))));
  }
  return std::expm1(x) - x;
}

/// 1 - ln(1 + x) / x for x > 0, accurate as x -> 0.
inline double one_minus_log1p_ratio(double x) {
  if (x < 1e-3) {
    // x/2 - x^2/3 + x^3/4 - x^4/5 + x^5/6
    return x * (0.5 + x * (-1.0 / 3.0 + x * (0.25 + x * (-0.2 + x / 6.0))));
  }
  return 1.0 - std::log1p(x) / x;
}

inline double poisson_pmf(int n, double mu) {
  return std::exp(n * std::log(mu) - mu - std::lgamma(n + 1.0));
}

/// P[N >= k] for N ~ Poisson(mu), summed over the upper tail (all terms positive).
inline double poisson_tail(int k, double mu) {
  if (k <= 0) return 1.0;
  double term = poisson_pmf(k, mu);
  double sum = 0.0;
  for (int n = k; n < k + 400; ++n) {
    sum += term;
    term *= mu / (n + 1);
    if (n > mu && term < sum * 1e-18) break;
  }
  return sum;
}

inline double square(double x) { return x * x; }

}  // namespace qkds::math
