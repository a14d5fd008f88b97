#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sinai {

double normal_cdf(double x);

/// Type-7 sample quantile; `sorted` must be ascending.
double quantile_sorted(std::span<const double> sorted, double level);
double quantile(std::vector<double> sample, double level);

struct QuantileBand {
  double estimate;
  double lower;
  double upper;
};

/// Distribution-free band from the order statistics at n p -+ z sqrt(n p (1 - p)).
QuantileBand quantile_band(std::span<const double> sorted, double level, double z = 1.5);

/// sup_x |F_n(x) - F(x)|.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);
double ks_two_sample(std::vector<double> a, std::vector<double> b);
/// Asymptotic Kolmogorov tail P(K > sqrt(n_eff) d).
double ks_pvalue(double d, double n_eff);

}  // namespace sinai
