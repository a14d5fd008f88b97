#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>

#include "sinai/grid.hpp"
#include "sinai/random.hpp"

namespace sinai {

enum class Spectral { TwoSidedJumps, NoPositiveJumps, NoNegativeJumps, Gaussian };

std::string to_string(Spectral s);
Spectral spectral_from_string(const std::string& s);

/// Strictly stable law with index alpha, positivity parameter p = P(S > 0)
/// and scale gamma, i.e. characteristic function
///
///   E exp(i l S) = exp(-gamma |l|^alpha (1 - i sign(l) tan(pi alpha (p - 1/2)))).
///
/// The sampler works in the Samorodnitsky-Taqqu S_alpha(sigma, beta, 0) form.
/// For alpha != 1 the conversion is
///
///   sigma = gamma^(1/alpha),   beta = tan(pi alpha (p - 1/2)) / tan(pi alpha / 2),
///
/// which makes the two characteristic functions identical term by term.
/// alpha = 2 is N(0, 2 gamma); alpha = 1 is only accepted symmetric (Cauchy
/// with scale gamma).
class StableLaw {
 public:
  /// Validates (alpha, p, gamma) and infers the spectral type.
  static StableLaw make(double alpha, double p, double gamma = 1.0);
  static StableLaw gaussian(double gamma = 1.0);
  static StableLaw symmetric(double alpha, double gamma = 1.0);
  /// Completely asymmetric law normalized so that E exp(l S_1) = exp(l^alpha)
  /// (no positive jumps) or E exp(-l S_1) = exp(l^alpha) (no negative jumps).
  static StableLaw one_sided(double alpha, Spectral side);

  double alpha() const noexcept { return alpha_; }
  double p() const noexcept { return p_; }
  double q() const noexcept { return 1.0 - p_; }
  double gamma() const noexcept { return gamma_; }
  Spectral spectral() const noexcept { return spectral_; }

  double beta() const noexcept { return beta_; }
  double sigma() const noexcept { return sigma_; }

  std::string describe() const;

 private:
  StableLaw() = default;

  double alpha_ = 2.0;
  double p_ = 0.5;
  double gamma_ = 1.0;
  Spectral spectral_ = Spectral::Gaussian;
  double beta_ = 0.0;
  double sigma_ = 1.0;
};

std::complex<double> cf_stable(const StableLaw& law, double lambda);

/// Chambers-Mallows-Stuck variate.
double sample_stable(const StableLaw& law, RandomStream& rng);

/// Grid path on [0, horizon] with n_steps iid increments distributed as
/// S_{horizon / n_steps}, i.e. (horizon / n_steps)^(1/alpha) S_1.
CadlagGrid sample_stable_path(const StableLaw& law, double horizon, std::size_t n_steps,
                              RandomStream& rng);

enum class Norming { A, AInv, B, BInv };

/// Norming functions a, a^-1, b, b^-1 defined on [1, inf) with a(1) = b(1) = 1.
class NormingFunctions {
 public:
  using Map = std::function<double(double)>;

  /// Normal attraction: a(x) = x^(1/alpha), b(x) = x^(1/q).
  static NormingFunctions power(double alpha, double q);

  NormingFunctions(Map a, Map a_inv, Map b, Map b_inv);

  double a(double x) const;
  double a_inv(double x) const;
  double b(double x) const;
  double b_inv(double x) const;

  double alpha_index() const noexcept { return alpha_; }
  double q_index() const noexcept { return q_; }

 private:
  NormingFunctions() = default;

  Map a_, a_inv_, b_, b_inv_;
  double alpha_ = 0.0;  // 0 when the maps are user supplied
  double q_ = 0.0;
};

double norming_eval(const NormingFunctions& nf, Norming which, double x);

}  // namespace sinai
