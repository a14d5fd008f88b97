#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sinai/environment.hpp"
#include "sinai/error.hpp"
#include "sinai/grid.hpp"
#include "sinai/mc.hpp"
#include "sinai/random.hpp"

namespace sinai {

struct Extrema {
  double sup;
  double inf;
  double sup_abs;
};

/// sup, inf and sup |Z| over [0, a] (a >= 0) or [a, 0] (a < 0).
Extrema running_extrema(const CadlagGrid& path, double a);

struct ReflectedRange {
  double z_r;      // Z_a - inf of Z between 0 and a
  double z_sharp;  // sup of z_r over the window, i.e. the largest rise
};

/// Reflected value and largest rise over the window between 0 and a. For
/// a < 0 the path is read backwards, x -> Z_{-x}.
ReflectedRange reflected_range(const CadlagGrid& path, double a);

enum class Direction { Forward, Backward };

struct Passage {
  double time;    // +inf when not attained
  bool attained;  // false: the level was not reached before the span ran out
};

/// Forward: inf{x >= 0 : Z_x >= level} for level >= 0, with <= for level < 0.
/// Backward: the same for x -> Z_{-x}; the returned time is nonnegative.
Passage first_passage(const CadlagGrid& path, double level, Direction dir);

/// a - inf of Z over the window traversed up to the passage of level a >= 0
/// ([0, sigma] forward, [-sigma~, 0] backward). Throws NotAttained.
double undershoot_U(const CadlagGrid& path, double a, Direction dir);

/// U~(sup_{[0,a]} Z) v Z#_a for a >= 0.
double tilde_G(const CadlagGrid& path, double a);

/// Descending strict ladder structure of V_k = steps[0] + ... + steps[k-1].
/// T[0] = 0 and H[0] = 0; M[n] for n >= 1 is the maximum of V_k + H[n-1]
/// over T[n-1] <= k < T[n]; M[0] is 0 by convention.
struct LadderDecomposition {
  std::vector<std::size_t> T;
  std::vector<double> H;
  std::vector<double> M;

  std::size_t ladders() const noexcept { return T.empty() ? 0 : T.size() - 1; }
};

class PartialLadder : public Error {
 public:
  PartialLadder(LadderDecomposition partial, std::size_t found)
      : Error("ladder_decomposition: steps exhausted after " + std::to_string(found) +
              " ladder epochs"),
        partial_(std::move(partial)),
        found_(found) {}
  const LadderDecomposition& partial() const noexcept { return partial_; }
  std::size_t found() const noexcept { return found_; }

 private:
  LadderDecomposition partial_;
  std::size_t found_;
};

LadderDecomposition ladder_decomposition(std::span<const double> steps, std::size_t n_ladders);

/// Options shared by the Monte Carlo estimators below.
struct McOptions {
  std::size_t workers = 0;       // 0: hardware concurrency
  std::size_t chunk = 1000;      // paths per task; fixes the substream layout
  std::uint64_t max_steps = 1ULL << 22;
};

/// E #{n >= 0 : H_n <= x}. Paths that have not gone below -x after
/// `max_steps` steps are kept with their partial count and counted in
/// meta["truncated"].
McEstimate renewal_estimate(const StepModel& model, double x, std::size_t n_paths,
                            RandomStream& rng, const McOptions& opt = {});

enum class ExitSide { UpFirst, DownFirst };
/// Open: (y, inf) before (-inf, -x). Closed: [y, inf) before (-inf, -x].
enum class ExitVariant { Open, Closed };

/// Which side the walk with the given increments leaves (-x, y) through;
/// nullopt when the steps run out first.
std::optional<ExitSide> exit_outcome(std::span<const double> steps, double x, double y,
                                     ExitVariant variant);
/// Streaming form: increments come from `next`, at most max_steps of them.
std::optional<ExitSide> exit_outcome(const std::function<double()>& next, double x, double y,
                                     ExitVariant variant, std::uint64_t max_steps);

/// Probability of exiting upwards first, undecided paths excluded and
/// counted in meta["undecided"].
McEstimate exit_probability(const StepModel& model, double x, double y, ExitVariant variant,
                            std::size_t n_paths, RandomStream& rng, const McOptions& opt = {});

enum class RangeDecayMethod { Direct, Splitting };

struct RangeDecayOptions {
  RangeDecayMethod method = RangeDecayMethod::Splitting;
  std::size_t replicas = 10;
  std::size_t workers = 0;
  double resample_below = 0.5;  // splitting: alive fraction that triggers resampling
  std::size_t min_survivors = 50;
};

struct RangeDecayPoint {
  std::size_t v;
  double scaled_v;          // v / a^-1(x)
  double log_p;             // log P(V#_v <= x), or the one-sided bound
  double log_p_se;
  std::size_t survivors;    // direct: paths; splitting: alive particles at v, summed over replicas
  bool bound_only;          // zero (or too few) survivors: log_p is an upper bound
};

struct RangeDecay {
  McEstimate slope;  // least-squares slope of -log P against v / a^-1(x)
  std::vector<RangeDecayPoint> pointwise;
};

/// Estimates the exponential decay rate of P(V#_v <= x). `n_paths` is the
/// total population, split evenly over the replicas; the slope error is the
/// spread of per-replica slopes.
RangeDecay estimate_range_decay(const StepModel& model, double x,
                                const std::vector<std::size_t>& v_grid, std::size_t n_paths,
                                RandomStream& rng, const RangeDecayOptions& opt = {});

/// Direct estimates of P(V#_v <= x) and P(V#_v <= x, max_{[0,v]} V <= x / 2)
/// on a v-grid, from one batch of paths.
struct RangeEventPoint {
  std::size_t v;
  McEstimate p_sharp;
  McEstimate p_joint;
};

std::vector<RangeEventPoint> range_event_probabilities(const StepModel& model, double x,
                                                       const std::vector<std::size_t>& v_grid,
                                                       std::size_t n_paths, RandomStream& rng,
                                                       const McOptions& opt = {});

}  // namespace sinai
