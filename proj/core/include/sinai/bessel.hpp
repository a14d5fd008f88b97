#pragma once

#include <span>
#include <vector>

#include "sinai/random.hpp"

namespace sinai {

/// Squared Bessel process sampled on a grid.
struct BesselGridPath {
  int dimension;  // 0 or 2
  double start;
  std::vector<double> times;
  std::vector<double> values;
};

/// One exact BESQ(dimension) transition from x over time t. Dimension 0 uses
/// the noncentral chi-square mixture X = 2 t Gamma(N), N ~ Poisson(x / (2 t)),
/// whose atom N = 0 gives exactly 0 (absorbing). Dimension 2 uses the squared
/// norm of a planar Brownian motion, which has the same law.
double besq_step(int dimension, double x, double t, RandomStream& rng);

/// Path on `grid` (increasing, grid[0] = 0) started from `start`.
BesselGridPath sample_besq_path(int dimension, double start, std::span<const double> grid,
                                RandomStream& rng);

}  // namespace sinai
