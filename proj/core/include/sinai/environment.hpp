#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "sinai/grid.hpp"
#include "sinai/random.hpp"
#include "sinai/stable.hpp"

namespace sinai {

/// Steps drawn exactly from a stable law.
struct ExactStable {
  StableLaw law;
};

/// Two-sided Pareto steps: with probability `weight_plus` the step is
/// +scale U^(-1/alpha), otherwise -scale U^(-1/alpha); centred when alpha > 1.
/// P(X > x) ~ weight_plus scale^alpha x^-alpha and likewise on the left.
struct ParetoTail {
  double alpha;
  double weight_plus;
  double scale;
};

/// i.i.d. RWRE transition probabilities taking two values. Stored as the
/// potential steps log((1 - omega) / omega) so that integer log-odds stay exact.
struct SinaiTwoPoint {
  double step_a;
  double step_b;
  double prob_a;

  double omega_a() const;
  double omega_b() const;
};

class StepModel {
 public:
  using Kind = std::variant<ExactStable, ParetoTail, SinaiTwoPoint>;

  static StepModel exact(const StableLaw& law);
  static StepModel gaussian() { return exact(StableLaw::gaussian()); }
  static StepModel pareto(double alpha, double weight_plus, double scale = 1.0);
  static StepModel two_point(double omega_a, double omega_b, double prob_a);
  /// Symmetric two-point environment with log-odds +-sigma (step variance sigma^2).
  static StepModel log_odds(double sigma);
  /// Steps +-1 with probability 1/2: the simple random walk.
  static StepModel simple_walk() { return log_odds(1.0); }

  /// Attach non-default norming functions.
  StepModel with_norming(NormingFunctions nf) const;

  double draw(RandomStream& rng) const;

  const Kind& kind() const noexcept { return kind_; }
  const NormingFunctions& norming() const noexcept { return nf_; }
  /// Index of the limit law and its negativity parameter q = 1 - p.
  double alpha() const noexcept { return alpha_; }
  double q() const noexcept { return q_; }

  std::string describe() const;
  nlohmann::json to_json() const;
  static StepModel from_json(const nlohmann::json& j);

 private:
  StepModel(Kind kind, double alpha, double q);

  Kind kind_;
  double alpha_;
  double q_;
  NormingFunctions nf_;
};

/// Two-sided potential on the integers, extended to the reals by
/// V(x) = V_{sign(x) floor(|x|)} (flat on (n, n+1), right-continuous on the
/// positive side, left-continuous on the negative side, 0 on (-1, 1)).
class Environment {
 public:
  /// steps_pos[n] = V_{n+1} - V_n, steps_neg[n] = V_{-n-1} - V_{-n}.
  Environment(std::vector<double> steps_pos, std::vector<double> steps_neg);

  static Environment flat(std::size_t half_length);

  std::span<const double> steps_pos() const noexcept { return steps_pos_; }
  std::span<const double> steps_neg() const noexcept { return steps_neg_; }
  /// V_0, V_1, ..., V_R.
  std::span<const double> potential_pos() const noexcept { return v_pos_; }
  /// V_0, V_-1, ..., V_-L.
  std::span<const double> potential_neg() const noexcept { return v_neg_; }

  std::size_t right_span() const noexcept { return steps_pos_.size(); }
  std::size_t left_span() const noexcept { return steps_neg_.size(); }
  std::size_t half_length() const noexcept { return std::min(right_span(), left_span()); }

  /// V at integer site n; RangeError outside [-L, R].
  double site(std::int64_t n) const;

  /// Grid path of the integer skeleton.
  CadlagGrid to_grid() const;

  const std::optional<StepModel>& model() const noexcept { return model_; }
  std::optional<std::uint64_t> seed() const noexcept { return seed_; }
  void set_provenance(StepModel model, std::uint64_t seed);

 private:
  std::vector<double> steps_pos_, steps_neg_;
  std::vector<double> v_pos_, v_neg_;
  std::optional<StepModel> model_;
  std::optional<std::uint64_t> seed_;
};

/// 2 half_length i.i.d. steps. Both sides use the same step law, the
/// negative side reversed so that (V_x) and (-V_{-x}) have the same law.
Environment build_environment(const StepModel& model, std::size_t half_length,
                              std::uint64_t seed);
/// Independent step laws on the two sides: V_n built from `pos`, -V_{-n}
/// from `neg`.
Environment build_environment(const StepModel& pos, const StepModel& neg,
                              std::size_t half_length, std::uint64_t seed);

double potential_at(const Environment& env, double x);

/// omega_x = 1 / (1 + exp(V_{x+1} - V_x)). pos[n] is omega_n, neg[k] is
/// omega_{-k-1}.
struct OmegaField {
  std::vector<double> pos;
  std::vector<double> neg;
};

OmegaField env_to_omega(const Environment& env);
Environment omega_to_env(const OmegaField& omega);

nlohmann::json to_json(const Environment& env);
Environment environment_from_json(const nlohmann::json& j);

}  // namespace sinai
