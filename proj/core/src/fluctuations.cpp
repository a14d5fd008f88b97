#include "sinai/fluctuations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sinai {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Calls f(value) for the grid points between 0 and a, starting at 0 and
// moving away from it.
template <class F>
void walk_window(const CadlagGrid& path, double a, F&& f) {
  const auto [first, last] = path.window(a);
  const auto v = path.values();
  if (a >= 0.0) {
    for (std::size_t i = first; i <= last; ++i) f(v[i]);
  } else {
    for (std::size_t i = last + 1; i-- > first;) f(v[i]);
  }
}

struct PassageIndex {
  std::size_t index;
  bool attained;
};

PassageIndex passage_index(const CadlagGrid& path, double level, Direction dir) {
  const auto v = path.values();
  const std::size_t o = path.origin();
  auto hit = [level](double z) { return level >= 0.0 ? z >= level : z <= level; };
  if (dir == Direction::Forward) {
    for (std::size_t i = o; i < v.size(); ++i)
      if (hit(v[i])) return {i, true};
  } else {
    for (std::size_t i = o + 1; i-- > 0;)
      if (hit(v[i])) return {i, true};
  }
  return {0, false};
}

}  // namespace

Extrema running_extrema(const CadlagGrid& path, double a) {
  Extrema e{0.0, 0.0, 0.0};
  walk_window(path, a, [&e](double z) {
    e.sup = std::max(e.sup, z);
    e.inf = std::min(e.inf, z);
  });
  e.sup_abs = std::max(e.sup, -e.inf);
  return e;
}

ReflectedRange reflected_range(const CadlagGrid& path, double a) {
  double lo = 0.0, r = 0.0, sharp = 0.0;
  walk_window(path, a, [&](double z) {
    lo = std::min(lo, z);
    r = z - lo;
    sharp = std::max(sharp, r);
  });
  return {r, sharp};
}

Passage first_passage(const CadlagGrid& path, double level, Direction dir) {
  const auto p = passage_index(path, level, dir);
  if (!p.attained) return {kInf, false};
  const double t = path.times()[p.index];
  return {dir == Direction::Forward ? t : -t, true};
}

double undershoot_U(const CadlagGrid& path, double a, Direction dir) {
  if (!(a >= 0.0)) throw DomainError("undershoot_U: level must be nonnegative");
  const auto p = passage_index(path, a, dir);
  if (!p.attained) throw NotAttained("undershoot_U: level not reached inside the path span");
  const auto v = path.values();
  const std::size_t o = path.origin();
  const std::size_t lo_i = std::min(o, p.index), hi_i = std::max(o, p.index);
  const double inf = *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(lo_i),
                                       v.begin() + static_cast<std::ptrdiff_t>(hi_i) + 1);
  return a - inf;
}

double tilde_G(const CadlagGrid& path, double a) {
  if (!(a >= 0.0)) throw DomainError("tilde_G: a must be nonnegative");
  const double top = running_extrema(path, a).sup;
  return std::max(undershoot_U(path, top, Direction::Backward), reflected_range(path, a).z_sharp);
}

LadderDecomposition ladder_decomposition(std::span<const double> steps, std::size_t n_ladders) {
  LadderDecomposition d;
  d.T.push_back(0);
  d.H.push_back(0.0);
  d.M.push_back(0.0);
  double v = 0.0;
  double record = 0.0;     // V at the current ladder epoch
  double seg_max = 0.0;    // max of V over the current segment
  for (std::size_t k = 0; k < steps.size() && d.ladders() < n_ladders; ++k) {
    v += steps[k];
    if (v < record) {
      d.M.push_back(seg_max - record);
      d.T.push_back(k + 1);
      d.H.push_back(-v);
      record = v;
      seg_max = v;
    } else {
      seg_max = std::max(seg_max, v);
    }
  }
  if (d.ladders() < n_ladders) {
    const std::size_t found = d.ladders();
    throw PartialLadder(std::move(d), found);
  }
  return d;
}

std::optional<ExitSide> exit_outcome(std::span<const double> steps, double x, double y,
                                     ExitVariant variant) {
  std::size_t i = 0;
  return exit_outcome([&] { return steps[i++]; }, x, y, variant, steps.size());
}

std::optional<ExitSide> exit_outcome(const std::function<double()>& next, double x, double y,
                                     ExitVariant variant, std::uint64_t max_steps) {
  if (!(x > 0.0 && y > 0.0)) throw DomainError("exit_outcome: x and y must be positive");
  double v = 0.0;
  const bool closed = variant == ExitVariant::Closed;
  for (std::uint64_t k = 0; k < max_steps; ++k) {
    v += next();
    if (closed ? v >= y : v > y) return ExitSide::UpFirst;
    if (closed ? v <= -x : v < -x) return ExitSide::DownFirst;
  }
  return std::nullopt;
}

}  // namespace sinai
