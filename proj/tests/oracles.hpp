// Test-only reference implementations, independent of the library's
// evaluation paths.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace oracles {

inline double binomial(int n, int j) {
  double acc = 1.0;
  for (int t = 1; t <= j; ++t) {
    acc *= static_cast<double>(n - j + t) / static_cast<double>(t);
  }
  return acc;
}

// Explicit expansion P_n(x) = 2^{-n} sum_j C(n,j)^2 (x-1)^{n-j} (x+1)^j,
// exact for small n; keep n <= 10 so the coefficients stay modest.
inline double legendre_explicit(int n, double x) {
  if (n < 0 || n > 10) {
    throw std::invalid_argument("legendre_explicit: supported for n <= 10");
  }
  double sum = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double c = binomial(n, j);
    sum += c * c * std::pow(x - 1.0, n - j) * std::pow(x + 1.0, j);
  }
  return std::ldexp(sum, -n);
}

}  // namespace oracles
