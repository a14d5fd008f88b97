#include "sinai/xi.hpp"

#include <algorithm>
#include <cmath>

#include "sinai/error.hpp"
#include "sinai/parallel.hpp"

namespace sinai {

namespace {

// Extremes of a Brownian bridge from a to b with variance v over the step.
double bridge_max(double a, double b, double v, RandomStream& rng) {
  const double d = b - a;
  return 0.5 * (a + b + std::sqrt(d * d - 2.0 * v * std::log(rng.uniform_open())));
}

double bridge_min(double a, double b, double v, RandomStream& rng) {
  const double d = b - a;
  return 0.5 * (a + b - std::sqrt(d * d - 2.0 * v * std::log(rng.uniform_open())));
}

// Depth below 0 of the backward path before it passes `level`, as a multiple
// of the level, from the uniform u.
double relative_depth(const StableLaw& law, double u) {
  const double a = law.alpha();
  if (law.spectral() == Spectral::NoNegativeJumps) {
    // backward path creeps upwards: P(depth <= y) = (y / (level + y))^(alpha - 1)
    const double r = std::pow(u, 1.0 / (a - 1.0));
    return r / (1.0 - r);
  }
  // backward path jumps upwards: P(depth > y) = (level / (level + y))^(alpha - 1)
  return std::pow(u, -1.0 / (a - 1.0)) - 1.0;
}

struct Track {
  double lo = 0.0, hi = 0.0, sharp = 0.0;
  void see(double top, double bottom, double end) {
    sharp = std::max(sharp, top - lo);
    hi = std::max(hi, top);
    lo = std::min(lo, bottom);
    sharp = std::max(sharp, end - lo);
  }
};

struct Backward {
  double level;
  double inf = 0.0;
  bool crossed;
  double horizon = 0.0;
};

}  // namespace

XiSample sample_xi_detailed(const StableLaw& law, RandomStream& rng, const XiOptions& opt) {
  if (opt.steps_per_unit < 1) throw DomainError("sample_xi: steps_per_unit must be >= 1");
  const bool gauss = law.spectral() == Spectral::Gaussian;
  const bool bridge = gauss && opt.bridge;
  const std::size_t levels = bridge ? 0 : opt.coarse_levels;
  const double alpha = law.alpha();
  const double var_unit = 2.0 * law.gamma();  // Gaussian case only
  const auto n = opt.steps_per_unit;
  if (levels > 0 && n % (std::size_t{1} << levels) != 0)
    throw DomainError("sample_xi: steps_per_unit must be divisible by 2^coarse_levels");
  const double dt = 1.0 / static_cast<double>(n);

  std::vector<Track> fwd(levels + 1);
  double x = 0.0;
  const double scale = std::pow(dt, 1.0 / alpha);
  for (std::size_t i = 0; i < n; ++i) {
    const double x1 = x + scale * sample_stable(law, rng);
    if (bridge) {
      const double top = bridge_max(x, x1, var_unit * dt, rng);
      const double bottom = bridge_min(x, x1, var_unit * dt, rng);
      fwd[0].see(top, bottom, x1);
    } else {
      fwd[0].see(x1, x1, x1);
      for (std::size_t l = 1; l <= levels && (i + 1) % (std::size_t{1} << l) == 0; ++l)
        fwd[l].see(x1, x1, x1);
    }
    x = x1;
  }

  std::vector<double> under(levels + 1);
  double horizon = 0.0;
  if (opt.backward == XiBackward::ScaleFunction) {
    if (!(gauss || law.spectral() == Spectral::NoPositiveJumps ||
          law.spectral() == Spectral::NoNegativeJumps))
      throw DomainError("sample_xi: scale-function backward step needs a one-sided law");
    // one uniform for every level keeps the levels coupled
    const double rel = relative_depth(law, rng.uniform_open());
    for (std::size_t l = 0; l <= levels; ++l) under[l] = fwd[l].hi * (1.0 + rel);
  } else {
    // backward path x -> S_{-x}, an independent copy of -S; segment j >= 1
    // covers [2^(j-1), 2^j] with the same number of steps
    std::vector<Backward> bwd;
    for (const auto& f : fwd) bwd.push_back({f.hi, 0.0, f.hi <= 0.0});
    auto all_crossed = [&] {
      return std::all_of(bwd.begin(), bwd.end(), [](const Backward& b) { return b.crossed; });
    };
    double y = 0.0, t = 0.0;
    std::size_t used = 0;
    for (std::size_t seg = 0; !all_crossed(); ++seg) {
      if (used + n > opt.max_backward_steps)
        throw HorizonExceeded("sample_xi: backward passage not resolved within the step cap");
      const double len = seg == 0 ? 1.0 : std::ldexp(1.0, static_cast<int>(seg) - 1);
      const double h = len / static_cast<double>(n);
      const double sc = std::pow(h, 1.0 / alpha);
      for (std::size_t i = 0; i < n && !all_crossed(); ++i) {
        const double y1 = y - sc * sample_stable(law, rng);
        t += h;
        Backward& b = bwd[0];
        if (!b.crossed) {
          if (y1 >= b.level) {
            b.crossed = true;
          } else if (bridge) {
            const double p = std::exp(-2.0 * (b.level - y) * (b.level - y1) / (var_unit * h));
            if (rng.uniform() < p)
              b.crossed = true;
            else
              b.inf = std::min(b.inf, bridge_min(y, y1, var_unit * h, rng));
          } else {
            b.inf = std::min(b.inf, y1);
          }
          if (b.crossed) b.horizon = t;
        }
        for (std::size_t l = 1; l <= levels && (i + 1) % (std::size_t{1} << l) == 0; ++l) {
          Backward& c = bwd[l];
          if (c.crossed) continue;
          if (y1 >= c.level) {
            c.crossed = true;
            c.horizon = t;
          } else {
            c.inf = std::min(c.inf, y1);
          }
        }
        y = y1;
      }
      used += n;
    }
    for (std::size_t l = 0; l <= levels; ++l) under[l] = bwd[l].level - bwd[l].inf;
    horizon = bwd[0].horizon;
  }

  auto functional = [&](std::size_t l) {
    const double v = std::pow(std::max(fwd[l].sharp, under[l]), -alpha);
    if (!(v > 0.0) || !std::isfinite(v))
      throw Error("sample_xi: non-positive or non-finite functional");
    return v;
  };
  XiSample out{};
  out.sharp = fwd[0].sharp;
  out.top = fwd[0].hi;
  out.undershoot = under[0];
  out.backward_horizon = horizon;
  out.xi = functional(0);
  for (std::size_t l = 1; l <= levels; ++l) out.xi_coarse.push_back(functional(l));
  return out;
}

std::vector<McEstimate> xi_laplace_mc(const StableLaw& law, const std::vector<double>& qs,
                                      std::size_t n, const RandomStream& rng,
                                      const XiOptions& opt, bool extrapolate,
                                      std::size_t workers) {
  XiOptions o = opt;
  const bool richardson = extrapolate && !(law.spectral() == Spectral::Gaussian && opt.bridge);
  o.coarse_levels = richardson ? std::max<std::size_t>(1, opt.coarse_levels) : 0;
  const double r = std::pow(2.0, -1.0 / law.alpha());
  const double k = richardson ? r / (1.0 - r) : 0.0;

  constexpr std::size_t chunk = 1000;
  const std::size_t n_chunks = (n + chunk - 1) / chunk;
  auto parts = parallel_map(n_chunks, workers, [&](std::size_t c) {
    std::vector<RunningStats> acc(qs.size());
    const std::size_t end = std::min(n, (c + 1) * chunk);
    for (std::size_t i = c * chunk; i < end; ++i) {
      RandomStream s = rng.substream(i);
      const XiSample x = sample_xi_detailed(law, s, o);
      for (std::size_t j = 0; j < qs.size(); ++j) {
        double v = std::exp(-qs[j] * x.xi);
        if (richardson) v = (1.0 + k) * v - k * std::exp(-qs[j] * x.xi_coarse[0]);
        acc[j].push(v);
      }
    }
    return acc;
  });
  std::vector<McEstimate> out;
  for (std::size_t j = 0; j < qs.size(); ++j) {
    RunningStats total;
    for (const auto& p : parts) total.merge(p[j]);
    McEstimate e = total.estimate(rng.identity());
    e.meta = {{"q", qs[j]},
              {"steps_per_unit", o.steps_per_unit},
              {"richardson", richardson},
              {"richardson_weight", k}};
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace sinai
