#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

#include "json.hpp"

namespace sinai {

/// Monte Carlo point estimate with its standard error and provenance.
struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  nlohmann::json meta = nlohmann::json::object();

  /// |mean - target| <= k * std_error.
  bool within(double target, double k = 3.0) const {
    return std::abs(mean - target) <= k * std_error;
  }
};

inline nlohmann::json to_json(const McEstimate& e) {
  return {{"mean", e.mean}, {"std_error", e.std_error}, {"n", e.n}, {"seed", e.seed},
          {"meta", e.meta}};
}

/// Welford running mean / variance.
class RunningStats {
 public:
  void push(double x) noexcept {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  void merge(const RunningStats& o) noexcept {
    if (o.n_ == 0) return;
    if (n_ == 0) {
      *this = o;
      return;
    }
    const double n = static_cast<double>(n_ + o.n_);
    const double d = o.mean_ - mean_;
    mean_ += d * static_cast<double>(o.n_) / n;
    m2_ += o.m2_ + d * d * static_cast<double>(n_) * static_cast<double>(o.n_) / n;
    n_ += o.n_;
  }

  std::size_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
  double std_error() const noexcept {
    return n_ > 1 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
  }

  McEstimate estimate(std::uint64_t seed) const {
    McEstimate e;
    e.mean = mean_;
    e.std_error = std_error();
    e.n = n_;
    e.seed = seed;
    return e;
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace sinai
