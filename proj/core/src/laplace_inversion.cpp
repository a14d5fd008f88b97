#include "sinai/laplace_inversion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sinai/error.hpp"

namespace sinai {

namespace {

long double factorial(int n) {
  long double r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double stehfest(const std::function<double(double)>& F, double t,
                const std::vector<long double>& w) {
  const long double h = std::numbers::ln2_v<long double> / t;
  long double acc = 0;
  for (std::size_t k = 1; k < w.size(); ++k) {
    const long double s = h * static_cast<long double>(k);
    acc += w[k] * static_cast<long double>(F(static_cast<double>(s))) / s;
  }
  return static_cast<double>(h * acc);
}

}  // namespace

std::vector<long double> stehfest_weights(int order) {
  if (order < 2 || order % 2 != 0 || order > 18)
    throw DomainError("Gaver-Stehfest order must be even and in [2, 18]");
  const int half = order / 2;
  std::vector<long double> w(static_cast<std::size_t>(order) + 1, 0.0L);
  for (int k = 1; k <= order; ++k) {
    long double s = 0;
    for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
      s += std::pow(static_cast<long double>(j), half) * factorial(2 * j) /
           (factorial(half - j) * factorial(j) * factorial(j - 1) * factorial(k - j) *
            factorial(2 * j - k));
    }
    w[static_cast<std::size_t>(k)] = ((k + half) % 2 == 0 ? 1.0L : -1.0L) * s;
  }
  return w;
}

InversionResult invert_laplace_cdf_checked(const std::function<double(double)>& transform,
                                           const std::vector<double>& t_grid, int order) {
  const auto w = stehfest_weights(order);
  const auto w_prev = order > 2 ? stehfest_weights(order - 2) : std::vector<long double>{};
  InversionResult out{{}, 0.0};
  out.cdf.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("invert_laplace_cdf: t must be > 0");
    const double f = stehfest(transform, t, w);
    if (!w_prev.empty()) {
      const double g = stehfest(transform, t, w_prev);
      out.max_divergence = std::max(out.max_divergence, std::abs(f - g));
    }
    out.cdf.push_back(std::clamp(f, 0.0, 1.0));
  }
  if (out.max_divergence > 1e-3)
    throw InversionUnstable("Gaver-Stehfest: orders N and N-2 disagree", out.max_divergence);
  return out;
}

std::vector<double> invert_laplace_cdf(const std::function<double(double)>& transform,
                                       const std::vector<double>& t_grid, int order) {
  return invert_laplace_cdf_checked(transform, t_grid, order).cdf;
}

}  // namespace sinai
