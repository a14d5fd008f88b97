#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sinai/environment.hpp"
#include "sinai/random.hpp"

namespace sinai {

struct WalkStats {
  std::uint64_t n = 0;
  std::int64_t final = 0;
  std::int64_t max = 0;
  std::int64_t min = 0;
  std::int64_t max_abs = 0;
};

/// Exact nearest-neighbour chain: from x, step +1 with probability omega_x.
/// The walk may occupy sites -L..R; leaving them throws RangeError.
WalkStats rwre_trajectory(const Environment& env, std::uint64_t n, RandomStream& rng);

/// Same chain with a constant omega, no environment. Consumes the stream
/// exactly like rwre_trajectory, so omega = 1/2 paths coincide draw for draw.
WalkStats constant_walk(double omega, std::uint64_t n, RandomStream& rng);

/// Per-site visit and right-step counts over -L..R (index x + L).
struct SiteCounts {
  std::int64_t offset = 0;
  std::vector<std::uint64_t> visits;
  std::vector<std::uint64_t> right;
};
SiteCounts rwre_site_counts(const Environment& env, std::uint64_t n, RandomStream& rng);

struct AnnealedSample {
  std::vector<double> values;  // sup_{k<=n} Z_k / a^{-1}(log n)
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::size_t retries = 0;     // environment doublings over all walks
  std::size_t initial_half_length = 0;
};

/// One fresh environment per walk. Walk i uses rng.substream(i); a walk that
/// leaves its environment is rerun on a doubled one built from the same seed,
/// which reproduces the same path up to the exit.
AnnealedSample annealed_sup_distribution(const StepModel& model, std::uint64_t n,
                                         std::size_t n_walks, const RandomStream& rng,
                                         std::size_t workers = 0);

struct EnvelopeRow {
  std::uint64_t n;
  double beta;
  std::vector<double> levels;
  std::vector<double> q_beta;       // sup (log log n)^beta / a^{-1}(log n)
  std::vector<double> q_beta_lower;
  std::vector<double> q_beta_upper;
  std::vector<double> q_triple_log; // sup / (a^{-1}(log n) log log log n)
};

std::vector<EnvelopeRow> envelope_diagnostic(const StepModel& model,
                                             const std::vector<std::uint64_t>& n_grid,
                                             std::size_t n_walks,
                                             const std::vector<double>& betas,
                                             const RandomStream& rng, std::size_t workers = 0,
                                             const std::vector<double>& levels = {0.1, 0.25, 0.5,
                                                                                  0.75, 0.9});

enum class Liminf { Zero, Infinite };

struct Classification {
  Liminf verdict;
  /// beta sits on the boundary; the verdict then relies on normal attraction.
  bool critical;
};

/// liminf of sup_{s<=t} X_s / f(t) for f(t) = a^{-1}(log t) / (log log t)^beta,
/// one-sided potential with positivity parameter 1 - q.
Classification theorem_classifiers(double beta, double q);
/// Same family, potential with jumps of both signs.
Classification theorem2b_classifier(double beta);

}  // namespace sinai
