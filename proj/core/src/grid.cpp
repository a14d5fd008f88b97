#include "sinai/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sinai/error.hpp"

namespace sinai {

CadlagGrid::CadlagGrid(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.empty() || times_.size() != values_.size())
    throw DomainError("CadlagGrid: times and values must be non-empty and of equal length");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1]))
      throw DomainError("CadlagGrid: times must be strictly increasing");
  }
  auto it = std::lower_bound(times_.begin(), times_.end(), 0.0);
  if (it == times_.end() || *it != 0.0) throw DomainError("CadlagGrid: 0 must be a grid time");
  origin_ = static_cast<std::size_t>(it - times_.begin());
  if (values_[origin_] != 0.0) throw DomainError("CadlagGrid: value at time 0 must be 0");
}

CadlagGrid CadlagGrid::two_sided(std::span<const double> negative,
                                 std::span<const double> positive, double h) {
  if (!(h > 0.0)) throw DomainError("CadlagGrid::two_sided: mesh must be positive");
  const std::size_t n_neg = negative.size();
  std::vector<double> t(n_neg + 1 + positive.size());
  std::vector<double> v(t.size());
  for (std::size_t k = 0; k < n_neg; ++k) {
    t[n_neg - 1 - k] = -static_cast<double>(k + 1) * h;
    v[n_neg - 1 - k] = negative[k];
  }
  t[n_neg] = 0.0;
  v[n_neg] = 0.0;
  for (std::size_t k = 0; k < positive.size(); ++k) {
    t[n_neg + 1 + k] = static_cast<double>(k + 1) * h;
    v[n_neg + 1 + k] = positive[k];
  }
  return CadlagGrid(std::move(t), std::move(v));
}

CadlagGrid CadlagGrid::forward(std::span<const double> positive, double h) {
  return two_sided({}, positive, h);
}

std::pair<std::size_t, std::size_t> CadlagGrid::window(double a) const {
  if (!contains(a))
    throw RangeError("CadlagGrid: argument " + std::to_string(a) + " outside path span");
  if (a >= 0.0) {
    // right-continuous: last grid time <= a
    auto it = std::upper_bound(times_.begin() + static_cast<std::ptrdiff_t>(origin_),
                               times_.end(), a);
    return {origin_, static_cast<std::size_t>(it - times_.begin()) - 1};
  }
  // left-continuous: first grid time >= a
  auto it = std::lower_bound(times_.begin(), times_.begin() + static_cast<std::ptrdiff_t>(origin_),
                             a);
  return {static_cast<std::size_t>(it - times_.begin()), origin_};
}

double CadlagGrid::value_at(double t) const {
  auto [first, last] = window(t);
  return t >= 0.0 ? values_[last] : values_[first];
}

}  // namespace sinai
