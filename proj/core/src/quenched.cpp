#include "sinai/quenched.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sinai/bessel.hpp"
#include "sinai/fluctuations.hpp"

namespace sinai {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct LogSum {
  double m = kNegInf;
  double s = 0.0;
  void add(double l) {
    if (l == kNegInf) return;
    if (l > m) {
      s = s * std::exp(m - l) + 1.0;
      m = l;
    } else {
      s += std::exp(l - m);
    }
  }
  double value() const { return m == kNegInf ? kNegInf : m + std::log(s); }
};

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

// A unit segment of the step potential, listed from the top level downwards.
struct Piece {
  double length;
  double V;
  bool negative;  // lies in s < 0
};

void check_level(const Environment& env, double v) {
  if (!(v > 0.0) || v > static_cast<double>(env.right_span()) + 1.0)
    throw RangeError("quenched: level v outside (0, R + 1]");
}

// Pieces covering [lo, hi) on the positive side, top first.
void positive_pieces(const Environment& env, double lo, double hi, std::vector<Piece>& out) {
  const auto vp = env.potential_pos();
  auto k = static_cast<std::int64_t>(std::ceil(hi)) - 1;
  for (; k >= 0; --k) {
    const double a = std::max(lo, static_cast<double>(k));
    const double b = std::min(hi, static_cast<double>(k + 1));
    if (b <= a) {
      if (static_cast<double>(k + 1) <= lo) break;
      continue;
    }
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(k), vp.size() - 1);
    out.push_back({b - a, vp[idx], false});
    if (a <= lo) break;
  }
}

struct IncrementResult {
  double log_pos;  // contribution of s >= 0
  double log_neg;  // contribution of s < 0
};

// One Ray-Knight local-time increment: Brownian motion from A(v_lo) run to
// the first hitting of A(v_hi). On [v_lo, v_hi] the field is BESQ(2) from 0
// in the clock A(v_hi) - A(s); below v_lo it continues as BESQ(0). Values
// are stored divided by K = A(v_hi) - A(v_lo).
IncrementResult local_time_increment(const Environment& env, double v_lo, double v_hi,
                                     double mesh, RandomStream& rng) {
  std::vector<Piece> top;
  positive_pieces(env, v_lo, v_hi, top);
  LogSum lk;
  for (const auto& p : top) lk.add(p.V + std::log(p.length));
  const double log_k = lk.value();

  LogSum pos, neg;
  double z = 0.0, pending = 0.0;
  int dim = 2;
  bool any_neg = false;

  auto run = [&](const Piece& p) -> bool {  // false once absorbed
    const auto n_sub = static_cast<std::size_t>(std::max(1.0, std::ceil(p.length / mesh - 1e-9)));
    const double ds = p.length / static_cast<double>(n_sub);
    const double dc = std::exp(p.V - log_k) * ds;
    const double log_w = std::log(ds) - p.V;
    for (std::size_t i = 0; i < n_sub; ++i) {
      z = besq_step(dim, z, pending + 0.5 * dc, rng);
      pending = 0.5 * dc;
      if (z > 0.0) {
        (p.negative ? neg : pos).add(std::log(z) + log_w);
        any_neg = any_neg || p.negative;
      } else if (dim == 0) {
        return false;
      }
    }
    return true;
  };
  auto settle = [&] {  // bring z to the current boundary point
    z = besq_step(dim, z, pending, rng);
    pending = 0.0;
  };

  for (const auto& p : top) run(p);
  settle();
  dim = 0;
  bool alive = z > 0.0;
  if (alive && v_lo > 0.0) {
    std::vector<Piece> mid;
    positive_pieces(env, 0.0, v_lo, mid);
    for (const auto& p : mid) {
      if (!(alive = run(p))) break;
    }
    if (alive) {
      settle();
      alive = z > 0.0;
    }
  }
  if (alive) {
    const double z0 = z;
    const auto vn = env.potential_neg();
    std::size_t k = 0;
    for (; k <= env.left_span(); ++k) {
      const Piece p{1.0, vn[k], true};
      if (!run(p)) {
        alive = false;
        break;
      }
    }
    if (!any_neg) {
      // absorbed before the first quadrature node: keep the boundary value
      // over half a sub-segment so the integral stays positive
      const double ds = 1.0 / std::max(1.0, std::ceil(1.0 / mesh - 1e-9));
      neg.add(std::log(z0) + std::log(0.5 * ds) - vn[0]);
    }
    if (alive) throw TruncatedI2(log_k + neg.value(), -static_cast<double>(k));
  }
  return {log_k + pos.value(), log_k + neg.value()};
}

QuenchedHit make_hit(double v, double log_i1, double log_i2, double mesh) {
  QuenchedHit h{};
  h.v = v;
  h.mesh = mesh;
  h.log_i1 = log_i1;
  h.log_i2 = log_i2;
  h.log_sigma = log_add(log_i1, log_i2);
  h.i1 = std::exp(log_i1);
  h.i2 = std::exp(log_i2);
  h.sigma = std::exp(h.log_sigma);
  return h;
}

}  // namespace

double scale_A(const Environment& env, double x) {
  if (!std::isfinite(x)) throw RangeError("scale_A: non-finite argument");
  if (x >= 0.0) {
    if (x > static_cast<double>(env.right_span()) + 1.0) throw RangeError("scale_A: x beyond span");
    const auto vp = env.potential_pos();
    const auto m = static_cast<std::size_t>(std::floor(x));
    double a = 0.0;
    for (std::size_t k = 0; k < m; ++k) a += std::exp(vp[k]);
    const double frac = x - static_cast<double>(m);
    if (frac > 0.0) a += frac * std::exp(vp[m]);
    return a;
  }
  if (-x > static_cast<double>(env.left_span()) + 1.0) throw RangeError("scale_A: x beyond span");
  const auto vn = env.potential_neg();
  const auto m = static_cast<std::size_t>(std::floor(-x));
  double a = 0.0;
  for (std::size_t k = 0; k < m; ++k) a += std::exp(vn[k]);
  const double frac = -x - static_cast<double>(m);
  if (frac > 0.0) a += frac * std::exp(vn[m]);
  return -a;
}

double log_scale_A(const Environment& env, double x) {
  if (!(x > 0.0)) throw DomainError("log_scale_A: x must be positive");
  check_level(env, x);
  std::vector<Piece> pieces;
  positive_pieces(env, 0.0, x, pieces);
  LogSum s;
  for (const auto& p : pieces) s.add(p.V + std::log(p.length));
  return s.value();
}

QuenchedHit quenched_hitting_time(const Environment& env, double v, double mesh,
                                  RandomStream& rng) {
  return quenched_hitting_times(env, {v}, mesh, rng).front();
}

std::vector<QuenchedHit> quenched_hitting_times(const Environment& env,
                                                const std::vector<double>& v_levels,
                                                double mesh, RandomStream& rng) {
  if (!(mesh > 0.0 && mesh <= 1.0)) throw DomainError("quenched: mesh must lie in (0, 1]");
  if (v_levels.empty()) throw DomainError("quenched: no levels");
  std::vector<QuenchedHit> out;
  double lo = 0.0, acc1 = kNegInf, acc2 = kNegInf;
  for (double v : v_levels) {
    check_level(env, v);
    if (!(v > lo)) throw DomainError("quenched: levels must be strictly increasing");
    const auto inc = local_time_increment(env, lo, v, mesh, rng);
    acc1 = log_add(acc1, inc.log_pos);
    acc2 = log_add(acc2, inc.log_neg);
    out.push_back(make_hit(v, acc1, acc2, mesh));
    lo = v;
  }
  return out;
}

double surrogate_log_sigma(const Environment& env, double v) {
  const CadlagGrid grid = env.to_grid();
  const double sharp = reflected_range(grid, v).z_sharp;
  const double top = running_extrema(grid, v).sup;
  return std::max(sharp, undershoot_U(grid, top, Direction::Backward));
}

}  // namespace sinai
