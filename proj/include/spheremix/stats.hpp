#pragma once

#include <cstddef>
#include <vector>

namespace spheremix {

/// Two-sample Kolmogorov-Smirnov statistic sup |F1 - F2| (inputs copied
/// and sorted internally).
double ks_two_sample(const std::vector<double>& a, const std::vector<double>& b);

/// Asymptotic KS critical value c(alpha) sqrt((n1+n2)/(n1 n2)) with
/// c(alpha) = sqrt(-ln(alpha/2)/2).
double ks_critical(double alpha, size_t n1, size_t n2);

/// Pearson chi-square statistic of `values` against the uniform law on
/// [lo, hi), using equal-width bins.
double chi_square_uniform(const std::vector<double>& values, double lo,
                          double hi, int bins);

/// 0.999 quantile of chi-square with 15 degrees of freedom (16 bins):
/// the significance-0.001 critical value used by the uniformity tests.
inline constexpr double kChiSquare999Df15 = 37.69729821835383;

}  // namespace spheremix
