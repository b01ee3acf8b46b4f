#include "spheremix/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spheremix {

double ks_two_sample(const std::vector<double>& a,
                     const std::vector<double>& b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("ks_two_sample: empty sample");
  }
  std::vector<double> x = a, y = b;
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    if (x[i] <= y[j]) {
      ++i;
    } else {
      ++j;
    }
    d = std::max(d, std::abs(static_cast<double>(i) / nx -
                             static_cast<double>(j) / ny));
  }
  return d;
}

double ks_critical(double alpha, size_t n1, size_t n2) {
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  const double n = static_cast<double>(n1) * static_cast<double>(n2);
  return c * std::sqrt((static_cast<double>(n1) + static_cast<double>(n2)) / n);
}

double chi_square_uniform(const std::vector<double>& values, double lo,
                          double hi, int bins) {
  if (bins < 2) throw std::invalid_argument("chi_square_uniform: bins >= 2");
  if (!(hi > lo)) throw std::invalid_argument("chi_square_uniform: hi > lo");
  std::vector<int64_t> counts(static_cast<size_t>(bins), 0);
  for (const double v : values) {
    int b = static_cast<int>((v - lo) / (hi - lo) * bins);
    b = std::clamp(b, 0, bins - 1);
    ++counts[static_cast<size_t>(b)];
  }
  const double expected = static_cast<double>(values.size()) / bins;
  double stat = 0.0;
  for (const int64_t c : counts) {
    const double diff = static_cast<double>(c) - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

}  // namespace spheremix
