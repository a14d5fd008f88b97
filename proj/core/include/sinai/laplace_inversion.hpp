#pragma once

#include <functional>
#include <vector>

namespace sinai {

struct InversionResult {
  std::vector<double> cdf;
  double max_divergence;  // largest |F_N(t) - F_{N-2}(t)| over the grid
};

/// Gaver-Stehfest inversion of the CDF of a nonnegative variable from its
/// Laplace transform q -> E exp(-q X), i.e. of transform(s) / s. `order` is
/// even and at most 18. Values are clamped to [0, 1]. Throws
/// InversionUnstable when orders N and N - 2 disagree by more than 1e-3 at
/// some grid point.
InversionResult invert_laplace_cdf_checked(const std::function<double(double)>& transform,
                                           const std::vector<double>& t_grid, int order = 16);

std::vector<double> invert_laplace_cdf(const std::function<double(double)>& transform,
                                       const std::vector<double>& t_grid, int order = 16);

/// Stehfest weights V_1..V_N (index 0 unused).
std::vector<long double> stehfest_weights(int order);

}  // namespace sinai
