#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <vector>

#include "catch_amalgamated.hpp"
#include "sinai/fluctuations.hpp"

using namespace sinai;

namespace {

// Top eigenvalue of the killed Lindley kernel r -> max(r + X, 0), X ~ N(0, 2),
// on [0, x]: an atom at 0 plus composite 20-point Gauss-Legendre nodes.
double lindley_top_eigenvalue(double x, int panels) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  std::vector<double> node, weight;
  const double h = x / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (std::size_t i = 0; i < Rule::abscissa().size(); ++i) {
      const double a = Rule::abscissa()[i], w = Rule::weights()[i];
      node.push_back(mid + 0.5 * h * a);
      weight.push_back(0.5 * h * w);
      if (a != 0.0) {
        node.push_back(mid - 0.5 * h * a);
        weight.push_back(0.5 * h * w);
      }
    }
  }
  const boost::math::normal_distribution<double> step(0.0, std::sqrt(2.0));
  const std::size_t m = node.size() + 1;  // state 0 is the atom
  auto state = [&](std::size_t i) { return i == 0 ? 0.0 : node[i - 1]; };
  std::vector<double> k(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    const double r = state(i);
    k[i * m] = boost::math::cdf(step, -r);
    for (std::size_t j = 1; j < m; ++j) k[i * m + j] = weight[j - 1] * boost::math::pdf(step, node[j - 1] - r);
  }
  std::vector<double> f(m, 1.0), g(m);
  double lambda = 0.0;
  for (int it = 0; it < 20000; ++it) {
    for (std::size_t i = 0; i < m; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < m; ++j) s += k[i * m + j] * f[j];
      g[i] = s;
    }
    double norm = 0.0;
    for (double v : g) norm = std::max(norm, std::abs(v));
    double change = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      change = std::max(change, std::abs(g[i] / norm - f[i]));
      f[i] = g[i] / norm;
    }
    lambda = norm;
    if (change < 1e-14) break;
  }
  return lambda;
}

}  // namespace

TEST_CASE("oracle sanity: quadrature converged, continuum limit from below") {
  const double l8 = lindley_top_eigenvalue(8.0, 16), l8f = lindley_top_eigenvalue(8.0, 32);
  CHECK(std::abs(l8 - l8f) < 1e-12);
  const double rate8 = -64.0 * std::log(l8);
  const double rate32 = -1024.0 * std::log(lindley_top_eigenvalue(32.0, 32));
  const double limit = M_PI * M_PI / 4.0;
  CHECK(rate8 < rate32);
  CHECK(rate32 < limit);
  CHECK(std::abs(rate32 - limit) < 0.1 * limit);
}

TEST_CASE("Gaussian range decay at x = 8 matches the kernel eigenvalue") {
  const double x = 8.0;
  const double rate = -x * x * std::log(lindley_top_eigenvalue(x, 16));
  std::vector<std::size_t> v_grid;
  for (double s = 2.0; s <= 8.0; s += 0.5) v_grid.push_back(static_cast<std::size_t>(s * x * x));
  RandomStream r(31);
  RangeDecayOptions opt;
  opt.replicas = 10;
  const RangeDecay d = estimate_range_decay(StepModel::gaussian(), x, v_grid, 20000, r, opt);
  INFO("oracle " << rate << " estimate " << d.slope.mean << " +- " << d.slope.std_error);
  CHECK(d.slope.within(rate, 3.0));
  CHECK(std::abs(d.slope.mean - rate) < 0.05 * rate);
  for (const auto& p : d.pointwise) CHECK_FALSE(p.bound_only);
}

TEST_CASE("trivial regimes") {
  RandomStream r(1);
  SECTION("x far above the range: probability close to 1") {
    const RangeDecay d = estimate_range_decay(StepModel::gaussian(), 1000.0, {10, 20, 40}, 2000, r);
    for (const auto& p : d.pointwise) CHECK(p.log_p > -1e-3);
    CHECK(std::abs(d.slope.mean) < 1e-3);
  }
  SECTION("steps that only go down never build a rise") {
    const auto down = StepModel::two_point(0.9, 0.8, 0.5);  // both potential steps negative
    const RangeDecay d = estimate_range_decay(down, 1.0, {4, 8, 16}, 1000, r);
    for (const auto& p : d.pointwise) CHECK(p.log_p == 0.0);
    CHECK(d.slope.mean == 0.0);
  }
}
