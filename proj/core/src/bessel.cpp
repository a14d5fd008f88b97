#include "sinai/bessel.hpp"

#include <algorithm>
#include <cmath>

#include "sinai/error.hpp"

namespace sinai {

double besq_step(int dimension, double x, double t, RandomStream& rng) {
  if (t <= 0.0) return x;
  if (dimension == 2) {
    // squared norm of a planar Brownian motion started at (sqrt(x), 0)
    const double g1 = std::sqrt(x) + std::sqrt(t) * rng.normal();
    const double g2 = std::sqrt(t) * rng.normal();
    return g1 * g1 + g2 * g2;
  }
  const double lambda = x / (2.0 * t);
  if (lambda > 1e12) {
    // Gaussian limit of the Poisson-Gamma mixture; skew is O(lambda^-1/2)
    return std::max(0.0, x + dimension * t + 2.0 * std::sqrt(x * t) * rng.normal());
  }
  const double shape = 0.5 * dimension + static_cast<double>(rng.poisson(lambda));
  if (shape == 0.0) return 0.0;
  return 2.0 * t * rng.gamma(shape);
}

BesselGridPath sample_besq_path(int dimension, double start, std::span<const double> grid,
                                RandomStream& rng) {
  if (dimension != 0 && dimension != 2) throw DomainError("sample_besq_path: dimension 0 or 2");
  if (!(start >= 0.0)) throw DomainError("sample_besq_path: start must be nonnegative");
  if (grid.empty() || grid[0] != 0.0) throw DomainError("sample_besq_path: grid must start at 0");
  BesselGridPath p{dimension, start, {grid.begin(), grid.end()}, {}};
  p.values.reserve(grid.size());
  p.values.push_back(start);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double dt = grid[i] - grid[i - 1];
    if (!(dt > 0.0)) throw DomainError("sample_besq_path: grid must be strictly increasing");
    p.values.push_back(besq_step(dimension, p.values.back(), dt, rng));
  }
  return p;
}

}  // namespace sinai
