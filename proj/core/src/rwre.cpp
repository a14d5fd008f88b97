#include "sinai/rwre.hpp"

#include <algorithm>
#include <cmath>

#include "sinai/error.hpp"
#include "sinai/parallel.hpp"
#include "sinai/stats.hpp"

namespace sinai {

namespace {

// omega as a 64-bit threshold: step right iff the raw draw is below it.
std::uint64_t threshold(double omega) {
  if (!(omega > 0.0 && omega < 1.0)) throw DomainError("rwre: omega outside (0, 1)");
  const double t = std::ldexp(omega, 64);
  return t >= 0x1.0p64 ? ~0ULL : static_cast<std::uint64_t>(t);
}

// thr[x + L] for x in [-L, R - 1]
std::vector<std::uint64_t> thresholds(const Environment& env) {
  const OmegaField w = env_to_omega(env);
  std::vector<std::uint64_t> t;
  t.reserve(w.neg.size() + w.pos.size());
  for (std::size_t k = w.neg.size(); k-- > 0;) t.push_back(threshold(w.neg[k]));
  for (double o : w.pos) t.push_back(threshold(o));
  return t;
}

template <class Visit>
WalkStats run_chain(const std::vector<std::uint64_t>& thr, std::int64_t left, std::uint64_t n,
                    RandomStream& rng, Visit&& visit) {
  WalkStats s;
  s.n = n;
  const std::int64_t size = static_cast<std::int64_t>(thr.size());
  std::int64_t i = left;  // index of site 0
  std::int64_t hi = i, lo = i;
  for (std::uint64_t k = 0; k < n; ++k) {
    if (i >= size || i < 0) throw RangeError("rwre_trajectory: walk left the environment");
    const bool right = rng() < thr[static_cast<std::size_t>(i)];
    visit(i, right);
    i += right ? 1 : -1;
    hi = std::max(hi, i);
    lo = std::min(lo, i);
  }
  s.final = i - left;
  s.max = hi - left;
  s.min = lo - left;
  s.max_abs = std::max(s.max, -s.min);
  return s;
}

}  // namespace

WalkStats rwre_trajectory(const Environment& env, std::uint64_t n, RandomStream& rng) {
  const auto thr = thresholds(env);
  return run_chain(thr, static_cast<std::int64_t>(env.left_span()), n, rng,
                   [](std::int64_t, bool) {});
}

WalkStats constant_walk(double omega, std::uint64_t n, RandomStream& rng) {
  const std::uint64_t t = threshold(omega);
  WalkStats s;
  s.n = n;
  std::int64_t z = 0;
  for (std::uint64_t k = 0; k < n; ++k) {
    z += rng() < t ? 1 : -1;
    s.max = std::max(s.max, z);
    s.min = std::min(s.min, z);
  }
  s.final = z;
  s.max_abs = std::max(s.max, -s.min);
  return s;
}

SiteCounts rwre_site_counts(const Environment& env, std::uint64_t n, RandomStream& rng) {
  const auto thr = thresholds(env);
  SiteCounts c;
  c.offset = static_cast<std::int64_t>(env.left_span());
  c.visits.assign(thr.size(), 0);
  c.right.assign(thr.size(), 0);
  run_chain(thr, c.offset, n, rng, [&](std::int64_t i, bool right) {
    ++c.visits[static_cast<std::size_t>(i)];
    if (right) ++c.right[static_cast<std::size_t>(i)];
  });
  return c;
}

AnnealedSample annealed_sup_distribution(const StepModel& model, std::uint64_t n,
                                         std::size_t n_walks, const RandomStream& rng,
                                         std::size_t workers) {
  if (n < 1000) throw DomainError("annealed_sup_distribution: n must be >= 1000");
  const double ln = std::log(static_cast<double>(n));
  const double scale = model.norming().a_inv(ln);
  const auto start = static_cast<std::size_t>(std::ceil(4.0 * std::sqrt(static_cast<double>(n) * ln)));

  struct One {
    double value;
    std::size_t retries;
  };
  auto walks = parallel_map(n_walks, workers, [&](std::size_t i) {
    RandomStream s = rng.substream(i);
    const std::uint64_t env_seed = s();
    std::size_t half = start, retries = 0;
    for (;;) {
      Environment env = build_environment(model, half, env_seed);
      RandomStream walk = s;
      try {
        const WalkStats w = rwre_trajectory(env, n, walk);
        return One{static_cast<double>(w.max) / scale, retries};
      } catch (const RangeError&) {
        half *= 2;
        ++retries;
      }
    }
  });

  AnnealedSample out;
  out.n = n;
  out.seed = rng.identity();
  out.initial_half_length = start;
  out.values.reserve(n_walks);
  for (const auto& w : walks) {
    out.values.push_back(w.value);
    out.retries += w.retries;
  }
  return out;
}

std::vector<EnvelopeRow> envelope_diagnostic(const StepModel& model,
                                             const std::vector<std::uint64_t>& n_grid,
                                             std::size_t n_walks,
                                             const std::vector<double>& betas,
                                             const RandomStream& rng, std::size_t workers,
                                             const std::vector<double>& levels) {
  std::vector<EnvelopeRow> rows;
  for (std::size_t g = 0; g < n_grid.size(); ++g) {
    const std::uint64_t n = n_grid[g];
    if (n > 10'000'000) throw DomainError("envelope_diagnostic: n beyond 1e7");
    const AnnealedSample base =
        annealed_sup_distribution(model, n, n_walks, rng.substream(g), workers);
    std::vector<double> sorted = base.values;
    std::sort(sorted.begin(), sorted.end());
    const double ln = std::log(static_cast<double>(n));
    const double lll = std::log(std::log(ln));
    for (double beta : betas) {
      EnvelopeRow r;
      r.n = n;
      r.beta = beta;
      r.levels = levels;
      const double f = std::pow(std::log(ln), beta);
      for (double lv : levels) {
        const QuantileBand b = quantile_band(sorted, lv);
        r.q_beta.push_back(b.estimate * f);
        r.q_beta_lower.push_back(b.lower * f);
        r.q_beta_upper.push_back(b.upper * f);
        r.q_triple_log.push_back(b.estimate / lll);
      }
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

Classification theorem_classifiers(double beta, double q) {
  if (!(beta >= 0.0)) throw DomainError("theorem_classifiers: beta must be >= 0");
  if (!(q > 0.0 && q < 1.0)) throw DomainError("theorem_classifiers: q must be in (0, 1)");
  const double crit = 1.0 / q;
  const bool critical = std::abs(beta - crit) <= 1e-12 * crit;
  if (critical) return {Liminf::Infinite, true};
  return {beta < crit ? Liminf::Zero : Liminf::Infinite, false};
}

Classification theorem2b_classifier(double beta) {
  if (!(beta >= 0.0)) throw DomainError("theorem2b_classifier: beta must be >= 0");
  return {beta <= 0.5 ? Liminf::Zero : Liminf::Infinite, beta == 0.5};
}

}  // namespace sinai
