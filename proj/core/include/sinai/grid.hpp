#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sinai {

/// A two-sided path sampled on a grid spanning [-L, R] with 0 on the grid.
///
/// Between grid points the path is a step function: right-continuous on the
/// positive side (value on [t_i, t_{i+1}) is v_i) and left-continuous on the
/// negative side (value on (t_{i-1}, t_i] is v_i). Every functional in
/// fluctuations.hpp is exact for this step function.
class CadlagGrid {
 public:
  /// Throws DomainError unless times are strictly increasing, contain 0 and
  /// the value at 0 is 0.
  CadlagGrid(std::vector<double> times, std::vector<double> values);

  /// Uniform grid with mesh h: `negative[k]` is the value at -(k+1) h and
  /// `positive[k]` the value at (k+1) h.
  static CadlagGrid two_sided(std::span<const double> negative, std::span<const double> positive,
                              double h = 1.0);
  static CadlagGrid forward(std::span<const double> positive, double h = 1.0);

  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return times_.size(); }
  /// Index of time 0.
  std::size_t origin() const noexcept { return origin_; }
  double left_end() const noexcept { return times_.front(); }
  double right_end() const noexcept { return times_.back(); }
  bool contains(double t) const noexcept { return t >= left_end() && t <= right_end(); }

  /// Value of the step function at t; throws RangeError outside the span.
  double value_at(double t) const;

  /// Index range [first, last] of grid points inside the window between 0
  /// and a, honouring the side conventions.
  std::pair<std::size_t, std::size_t> window(double a) const;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  std::size_t origin_ = 0;
};

}  // namespace sinai
