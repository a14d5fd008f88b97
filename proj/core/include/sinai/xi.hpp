#pragma once

#include <cstddef>
#include <vector>

#include "sinai/mc.hpp"
#include "sinai/random.hpp"
#include "sinai/stable.hpp"

namespace sinai {

enum class XiBackward {
  /// Simulate the backward path on a doubling horizon until it passes the level.
  Grid,
  /// Draw the depth below 0 before the passage from the two-sided exit law
  /// given by the scale function (completely asymmetric laws only).
  ScaleFunction,
};

struct XiOptions {
  std::size_t steps_per_unit = 1 << 12;  // forward mesh on [0, 1]
  std::size_t max_backward_steps = 1 << 20;
  XiBackward backward = XiBackward::Grid;
  /// Gaussian paths: sample extrema of the Brownian bridge inside each step.
  bool bridge = true;
  /// Also evaluate the functional on the same paths observed every 2^l steps,
  /// l = 1..coarse_levels (grid paths only).
  std::size_t coarse_levels = 0;
};

struct XiSample {
  double xi;
  double sharp;        // S#_1
  double top;          // sup_{[0,1]} S
  double undershoot;   // U~_S(top)
  double backward_horizon;
  std::vector<double> xi_coarse;  // xi_coarse[l - 1] at mesh 2^l / steps_per_unit
};

/// Xi = (S#_1 v U~_S(sup_{[0,1]} S))^(-alpha) from independent forward and
/// backward paths of `law`. HorizonExceeded when the backward passage needs
/// more than max_backward_steps steps.
XiSample sample_xi_detailed(const StableLaw& law, RandomStream& rng, const XiOptions& opt = {});

/// Monte Carlo E exp(-q Xi) for each q. Grid paths (no Brownian bridge) carry
/// an O(h^(1/alpha)) bias from extrema missed between mesh points; with
/// `extrapolate` each path also gives the value at mesh 2h and the estimate
/// is the Richardson combination (1 + k) f(h) - k f(2h), k = r / (1 - r),
/// r = 2^(-1/alpha). Path i uses rng.substream(i).
std::vector<McEstimate> xi_laplace_mc(const StableLaw& law, const std::vector<double>& qs,
                                      std::size_t n, const RandomStream& rng,
                                      const XiOptions& opt = {}, bool extrapolate = true,
                                      std::size_t workers = 0);

inline double sample_xi(const StableLaw& law, std::size_t steps_per_unit, RandomStream& rng) {
  XiOptions opt;
  opt.steps_per_unit = steps_per_unit;
  return sample_xi_detailed(law, rng, opt).xi;
}

}  // namespace sinai
