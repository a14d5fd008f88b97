// Monte Carlo estimators built on the walk V: renewal function, exit
// probabilities, and the decay of P(V#_v <= x).
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sinai/fluctuations.hpp"
#include "sinai/parallel.hpp"

namespace sinai {

namespace {

std::size_t n_chunks(std::size_t n, std::size_t chunk) { return (n + chunk - 1) / chunk; }

std::size_t chunk_size(std::size_t n, std::size_t chunk, std::size_t c) {
  return std::min(chunk, n - c * chunk);
}

// Ordinary least squares slope of y against x.
double ols_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

struct ReplicaTrace {
  std::vector<double> log_p;           // per grid point, -inf if extinct
  std::vector<std::size_t> survivors;  // alive particles at each grid point
};

ReplicaTrace run_replica(const StepModel& model, double x, const std::vector<std::size_t>& v_grid,
                         std::size_t population, RandomStream rng, bool splitting,
                         double resample_below) {
  ReplicaTrace tr;
  tr.log_p.assign(v_grid.size(), -std::numeric_limits<double>::infinity());
  tr.survivors.assign(v_grid.size(), 0);
  // particle state: reflected value V - min V; a particle dies once it exceeds x
  std::vector<double> r(population, 0.0), scratch;
  std::size_t alive = population;
  double log_acc = 0.0;
  const double n_pop = static_cast<double>(population);
  std::size_t gi = 0;
  const std::size_t v_max = v_grid.back();
  for (std::size_t step = 1; step <= v_max && alive > 0; ++step) {
    std::size_t w = 0;
    for (std::size_t i = 0; i < alive; ++i) {
      const double z = std::max(0.0, r[i] + model.draw(rng));
      if (z <= x) r[w++] = z;
    }
    alive = w;
    while (gi < v_grid.size() && v_grid[gi] == step) {
      tr.survivors[gi] = alive;
      if (alive > 0) tr.log_p[gi] = log_acc + std::log(static_cast<double>(alive) / n_pop);
      ++gi;
    }
    if (splitting && alive > 0 && static_cast<double>(alive) < resample_below * n_pop) {
      log_acc += std::log(static_cast<double>(alive) / n_pop);
      scratch.assign(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(alive));
      for (std::size_t i = 0; i < population; ++i) {
        const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(alive));
        r[i] = scratch[std::min(j, alive - 1)];
      }
      alive = population;
    }
  }
  return tr;
}

}  // namespace

McEstimate renewal_estimate(const StepModel& model, double x, std::size_t n_paths,
                            RandomStream& rng, const McOptions& opt) {
  if (!(x > 0.0)) throw DomainError("renewal_estimate: x must be positive");
  if (n_paths < 2) throw DomainError("renewal_estimate: need at least two paths");
  struct Part {
    RunningStats stats;
    std::size_t truncated = 0;
  };
  const auto parts = parallel_map(n_chunks(n_paths, opt.chunk), opt.workers, [&](std::size_t c) {
    Part part;
    RandomStream r = rng.substream(c);
    for (std::size_t k = 0; k < chunk_size(n_paths, opt.chunk, c); ++k) {
      double v = 0.0, lo = 0.0;
      double count = 1.0;  // H_0 = 0
      std::uint64_t s = 0;
      for (; s < opt.max_steps; ++s) {
        v += model.draw(r);
        if (v < lo) {
          lo = v;
          if (-v > x) break;
          count += 1.0;
        }
      }
      if (s == opt.max_steps) ++part.truncated;
      part.stats.push(count);
    }
    return part;
  });
  RunningStats all;
  std::size_t truncated = 0;
  for (const auto& p : parts) {
    all.merge(p.stats);
    truncated += p.truncated;
  }
  McEstimate e = all.estimate(rng.identity());
  e.meta = {{"x", x}, {"truncated", truncated}, {"max_steps", opt.max_steps},
            {"model", model.to_json()}};
  return e;
}

McEstimate exit_probability(const StepModel& model, double x, double y, ExitVariant variant,
                            std::size_t n_paths, RandomStream& rng, const McOptions& opt) {
  struct Part {
    RunningStats stats;
    std::size_t undecided = 0;
  };
  const auto parts = parallel_map(n_chunks(n_paths, opt.chunk), opt.workers, [&](std::size_t c) {
    Part part;
    RandomStream r = rng.substream(c);
    const std::function<double()> next = [&r, &model] { return model.draw(r); };
    for (std::size_t k = 0; k < chunk_size(n_paths, opt.chunk, c); ++k) {
      const auto side = exit_outcome(next, x, y, variant, opt.max_steps);
      if (!side) {
        ++part.undecided;
        continue;
      }
      part.stats.push(*side == ExitSide::UpFirst ? 1.0 : 0.0);
    }
    return part;
  });
  RunningStats all;
  std::size_t undecided = 0;
  for (const auto& p : parts) {
    all.merge(p.stats);
    undecided += p.undecided;
  }
  McEstimate e = all.estimate(rng.identity());
  e.meta = {{"x", x},
            {"y", y},
            {"variant", variant == ExitVariant::Closed ? "closed" : "open"},
            {"undecided", undecided},
            {"model", model.to_json()}};
  return e;
}

RangeDecay estimate_range_decay(const StepModel& model, double x,
                                const std::vector<std::size_t>& v_grid, std::size_t n_paths,
                                RandomStream& rng, const RangeDecayOptions& opt) {
  if (!(x > 0.0)) throw DomainError("estimate_range_decay: x must be positive");
  if (v_grid.size() < 2 || !std::is_sorted(v_grid.begin(), v_grid.end()) ||
      std::adjacent_find(v_grid.begin(), v_grid.end()) != v_grid.end() || v_grid.front() < 1)
    throw DomainError("estimate_range_decay: v_grid must be strictly increasing and >= 1");
  if (opt.replicas < 2) throw DomainError("estimate_range_decay: need at least two replicas");
  const std::size_t population = n_paths / opt.replicas;
  if (population < 1) throw DomainError("estimate_range_decay: too few paths");

  const double ax = model.norming().a_inv(std::max(x, 1.0));
  const bool splitting = opt.method == RangeDecayMethod::Splitting;
  const auto traces = parallel_map(opt.replicas, opt.workers, [&](std::size_t i) {
    return run_replica(model, x, v_grid, population, rng.substream(i), splitting,
                       opt.resample_below);
  });

  const std::size_t m = v_grid.size();
  const double R = static_cast<double>(opt.replicas);
  RangeDecay out;
  std::vector<bool> usable(m, true);
  for (std::size_t g = 0; g < m; ++g) {
    RangeDecayPoint pt{};
    pt.v = v_grid[g];
    pt.scaled_v = static_cast<double>(v_grid[g]) / ax;
    RunningStats p;
    double ref = -std::numeric_limits<double>::infinity();
    for (const auto& t : traces) {
      ref = std::max(ref, t.log_p[g]);
      pt.survivors += t.survivors[g];
      if (t.survivors[g] < opt.min_survivors) usable[g] = false;
    }
    if (std::isinf(ref)) {
      // nothing survived anywhere: rule-of-three upper bound
      pt.log_p = std::log(3.0 / (R * static_cast<double>(population)));
      pt.log_p_se = 0.0;
      pt.bound_only = true;
      usable[g] = false;
    } else {
      for (const auto& t : traces) p.push(std::exp(t.log_p[g] - ref));
      pt.log_p = ref + std::log(p.mean());
      pt.log_p_se = p.std_error() / p.mean();
      pt.bound_only = !usable[g];
    }
    out.pointwise.push_back(pt);
  }

  std::vector<double> xs, ys;
  for (std::size_t g = 0; g < m; ++g) {
    if (!usable[g]) continue;
    xs.push_back(out.pointwise[g].scaled_v);
    ys.push_back(-out.pointwise[g].log_p);
  }
  McEstimate slope;
  slope.n = opt.replicas * population;
  slope.seed = rng.identity();
  if (xs.size() >= 2) {
    slope.mean = ols_slope(xs, ys);
    RunningStats spread;
    for (const auto& t : traces) {
      std::vector<double> yr;
      for (std::size_t g = 0; g < m; ++g)
        if (usable[g]) yr.push_back(-t.log_p[g]);
      spread.push(ols_slope(xs, yr));
    }
    slope.std_error = spread.std_error();
  } else {
    slope.mean = std::numeric_limits<double>::quiet_NaN();
    slope.std_error = std::numeric_limits<double>::quiet_NaN();
  }
  slope.meta = {{"x", x},
                {"a_inv_x", ax},
                {"method", splitting ? "splitting" : "direct"},
                {"replicas", opt.replicas},
                {"population", population},
                {"points_fitted", xs.size()},
                {"model", model.to_json()}};
  out.slope = std::move(slope);
  return out;
}

std::vector<RangeEventPoint> range_event_probabilities(const StepModel& model, double x,
                                                       const std::vector<std::size_t>& v_grid,
                                                       std::size_t n_paths, RandomStream& rng,
                                                       const McOptions& opt) {
  if (v_grid.empty() || !std::is_sorted(v_grid.begin(), v_grid.end()))
    throw DomainError("range_event_probabilities: v_grid must be sorted and non-empty");
  const std::size_t m = v_grid.size();
  struct Part {
    std::vector<RunningStats> sharp, joint;
  };
  const auto parts = parallel_map(n_chunks(n_paths, opt.chunk), opt.workers, [&](std::size_t c) {
    Part part{std::vector<RunningStats>(m), std::vector<RunningStats>(m)};
    RandomStream r = rng.substream(c);
    for (std::size_t k = 0; k < chunk_size(n_paths, opt.chunk, c); ++k) {
      double v = 0.0, lo = 0.0, hi = 0.0, sharp = 0.0;
      std::size_t gi = 0;
      while (gi < m && v_grid[gi] == 0) {
        part.sharp[gi].push(1.0);
        part.joint[gi].push(1.0);
        ++gi;
      }
      for (std::size_t s = 1; gi < m; ++s) {
        v += model.draw(r);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        sharp = std::max(sharp, v - lo);
        while (gi < m && v_grid[gi] == s) {
          const bool a = sharp <= x;
          part.sharp[gi].push(a ? 1.0 : 0.0);
          part.joint[gi].push(a && hi <= x / 2.0 ? 1.0 : 0.0);
          ++gi;
        }
      }
    }
    return part;
  });
  std::vector<RangeEventPoint> out(m);
  for (std::size_t g = 0; g < m; ++g) {
    RunningStats s, j;
    for (const auto& p : parts) {
      s.merge(p.sharp[g]);
      j.merge(p.joint[g]);
    }
    out[g].v = v_grid[g];
    out[g].p_sharp = s.estimate(rng.identity());
    out[g].p_joint = j.estimate(rng.identity());
    out[g].p_sharp.meta = {{"x", x}, {"v", v_grid[g]}};
    out[g].p_joint.meta = {{"x", x}, {"v", v_grid[g]}};
  }
  return out;
}

}  // namespace sinai
