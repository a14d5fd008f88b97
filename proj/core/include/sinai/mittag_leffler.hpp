#pragma once

#include "sinai/random.hpp"
#include "sinai/stable.hpp"

namespace sinai {

/// E_alpha(x) = sum_n x^n / Gamma(alpha n + 1) or one of its first two
/// derivatives, to an absolute error of `precision`.
struct MlfQuery {
  double alpha;
  double x;
  int deriv_order = 0;
  double precision = 1e-14;
};

/// Positive arguments are summed directly (log-scaled when large); negative
/// arguments use compensated summation and move to extended precision when
/// the cancellation bound exceeds the target. Throws PrecisionError when
/// even 100 digits are not enough and RangeError when the value overflows.
double mlf(const MlfQuery& q);
inline double mlf(double alpha, double x, int deriv_order = 0) {
  return mlf(MlfQuery{alpha, x, deriv_order});
}

/// First zero of E_alpha on the negative axis, as a positive number.
double rho1(double alpha);
/// First zero of alpha x E''_alpha(x) + (alpha - 1) E'_alpha(x) on the
/// negative axis, as a positive number.
double rho2(double alpha);

/// Index and side of a completely asymmetric stable limit (alpha > 1).
/// Gaussian is accepted at alpha = 2 and behaves as either side.
struct LimitLawSpec {
  double alpha;
  Spectral spectral;
};

double ksharp_asymmetric(const LimitLawSpec& spec);

/// E exp(-q tau#_1). Defined for q > -K#; DomainError at or beyond the pole.
double laplace_tau_sharp(const LimitLawSpec& spec, double q);
/// E exp(-q (tau#_1 ^ tau_b)) for 0 < b <= 1.
double laplace_tau_sharp_and_tau_b(const LimitLawSpec& spec, double q, double b);
/// E exp(-q Xi).
double laplace_xi(const LimitLawSpec& spec, double q);

enum class ExitForm { Corrected, Printed };

struct ExitProbabilities {
  double p_survive;   // P(exit time of (b - 1, b) > eta(q))
  double p_exit_low;  // P(exit before eta(q), through the lower end)
};

/// Two-sided exit of (b - 1, b) by a stable process without negative jumps
/// before an independent exponential time of rate q >= 0, 0 < b <= 1.
/// `Printed` evaluates the survival term at E_alpha(b^alpha) instead of
/// E_alpha(q b^alpha); it exists only for comparison.
ExitProbabilities exit_two_sided(double alpha, double q, double b,
                                 ExitForm form = ExitForm::Corrected);

/// Scale function x^(alpha - 1) / Gamma(alpha) for x >= 0.
double scale_W(double alpha, double x);

/// r_1 with density (alpha - 1) x^(alpha - 2) on (0, 1) (no positive jumps),
/// mirrored to 1 - r_1 for no negative jumps.
double sample_r1(const LimitLawSpec& spec, RandomStream& rng);

}  // namespace sinai
