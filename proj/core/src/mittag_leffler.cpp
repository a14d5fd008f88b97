#include "sinai/mittag_leffler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "sinai/error.hpp"

namespace sinai {

namespace {

using LD = long double;
using boost::multiprecision::cpp_bin_float_100;
using boost::multiprecision::cpp_bin_float_50;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("Mittag-Leffler: alpha must lie in (0, 2]");
}

LD falling(LD n, int k) {
  LD r = 1;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

// E, E', E'' at x >= 0 sharing one scale: value_k = d[k] * exp(log_scale).
struct Triple {
  LD d[3];
  LD log_scale;
};

Triple positive_triple(double alpha, double x) {
  if (x == 0.0) {
    return {{1.0L, 1.0L / std::tgamma(static_cast<LD>(alpha) + 1),
             2.0L / std::tgamma(2 * static_cast<LD>(alpha) + 1)},
            0.0L};
  }
  const LD lx = std::log(static_cast<LD>(x));
  const LD a = alpha;
  std::vector<LD> logs;
  LD peak = -std::numeric_limits<LD>::infinity();
  for (std::size_t n = 0;; ++n) {
    const LD l = static_cast<LD>(n) * lx - std::lgamma(a * static_cast<LD>(n) + 1);
    logs.push_back(l);
    peak = std::max(peak, l);
    // stop once past the peak and 70 e-folds below it
    if (n > 3 && l < logs[n - 1] && l < peak - 70) break;
    if (n > 50'000'000) throw PrecisionError("Mittag-Leffler: series did not converge", INFINITY);
  }
  Triple t{{0, 0, 0}, peak};
  for (std::size_t n = 0; n < logs.size(); ++n) {
    const LD base = std::exp(logs[n] - peak);
    t.d[0] += base;
    if (n >= 1) t.d[1] += base * static_cast<LD>(n) / static_cast<LD>(x);
    if (n >= 2) t.d[2] += base * falling(static_cast<LD>(n), 2) / (static_cast<LD>(x) * x);
  }
  return t;
}

template <class T>
struct AltResult {
  double value;
  double bound;
};

template <class T>
T lgamma_t(const T& z) {
  if constexpr (std::is_same_v<T, LD>) {
    return std::lgamma(z);
  } else {
    return boost::math::lgamma(z);
  }
}

// Alternating series for x < 0 accumulated in T with compensation.
template <class T>
AltResult<T> alternating(double alpha, double x, int order, double precision) {
  using std::abs;
  using std::exp;
  using std::log;
  const T a = alpha;
  const T ly = log(T(-x));
  const T eps = std::numeric_limits<T>::epsilon();
  T sum = 0, comp = 0, abs_sum = 0, max_log = 0;
  T prev = 0;
  bool first = true;
  for (int n = order;; ++n) {
    const T lt = log(T(falling(n, order))) + T(n - order) * ly - lgamma_t<T>(a * T(n) + 1);
    const T mag = exp(lt);
    const T term = ((n - order) % 2 == 0) ? mag : T(-mag);
    // Neumaier
    const T s = sum + term;
    if (abs(sum) >= abs(term))
      comp += (sum - s) + term;
    else
      comp += (term - s) + sum;
    sum = s;
    abs_sum += mag;
    max_log = std::max(max_log, T(abs(lt)));
    const bool past_peak = !first && mag < prev;
    if (past_peak && mag < T(precision) * T(1e-3) && mag < eps * abs_sum) break;
    prev = mag;
    first = false;
    if (n > 100000) break;
  }
  const T total = sum + comp;
  // every term carries a relative error of a few ulps times its log size
  const T bound = abs_sum * eps * T(16) * (T(1) + max_log);
  return {static_cast<double>(total), static_cast<double>(bound)};
}

double negative_mlf(double alpha, double x, int order, double precision) {
  auto r1 = alternating<LD>(alpha, x, order, precision);
  if (r1.bound <= precision) return r1.value;
  auto r2 = alternating<cpp_bin_float_50>(alpha, x, order, precision);
  if (r2.bound <= precision) return r2.value;
  auto r3 = alternating<cpp_bin_float_100>(alpha, x, order, precision);
  if (r3.bound <= precision) return r3.value;
  throw PrecisionError("Mittag-Leffler: cancellation exceeds 100-digit accumulation", r3.bound);
}

Triple triple(double alpha, double x) {
  if (x >= 0.0) return positive_triple(alpha, x);
  return {{negative_mlf(alpha, x, 0, 1e-15), negative_mlf(alpha, x, 1, 1e-15),
           negative_mlf(alpha, x, 2, 1e-15)},
          0.0L};
}

template <class F>
double first_negative_root(F&& f, const char* name) {
  constexpr double step = 0.01, window = 100.0;
  double x0 = 0.0, f0 = f(0.0);
  for (int k = 1; k * step <= window + 1e-9; ++k) {
    const double x1 = -k * step;
    const double f1 = f(x1);
    if (f1 == 0.0) return -x1;
    if ((f0 > 0.0) != (f1 > 0.0)) {
      double hi = x0, lo = x1;  // f(hi) has the sign of f(0)
      const bool pos = f0 > 0.0;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (hi + lo);
        const double fm = f(mid);
        if ((fm > 0.0) == pos)
          hi = mid;
        else
          lo = mid;
      }
      return -0.5 * (hi + lo);
    }
    x0 = x1;
    f0 = f1;
  }
  throw RootNotFound(std::string(name) + ": no sign change on [-100, 0]");
}

LimitLawSpec checked(const LimitLawSpec& spec) {
  if (!(spec.alpha > 1.0 && spec.alpha <= 2.0))
    throw DomainError("LimitLawSpec: alpha must lie in (1, 2]");
  switch (spec.spectral) {
    case Spectral::NoPositiveJumps:
    case Spectral::NoNegativeJumps:
      return spec;
    case Spectral::Gaussian:
      if (spec.alpha != 2.0) throw DomainError("LimitLawSpec: Gaussian needs alpha = 2");
      return {2.0, Spectral::NoPositiveJumps};
    default:
      throw DomainError("LimitLawSpec: the law must be completely asymmetric");
  }
}

bool no_positive(const LimitLawSpec& s) { return s.spectral == Spectral::NoPositiveJumps; }

void check_pole(const LimitLawSpec& spec, double q) {
  if (!std::isfinite(q)) throw DomainError("transform argument must be finite");
  if (q >= 0.0) return;
  const double k = ksharp_asymmetric(spec);
  if (q <= -k) throw DomainError("transform argument at or beyond the first pole -K#");
}

LD g_scaled(double alpha, double q, const Triple& t) {
  return alpha * q * t.d[2] + (alpha - 1.0) * t.d[1];
}

}  // namespace

double mlf(const MlfQuery& q) {
  check_alpha(q.alpha);
  if (q.deriv_order < 0 || q.deriv_order > 2) throw DomainError("mlf: derivative order 0, 1 or 2");
  if (!(q.precision >= 1e-15 && q.precision <= 1e-6))
    throw DomainError("mlf: precision must lie in [1e-15, 1e-6]");
  if (!std::isfinite(q.x)) throw DomainError("mlf: argument must be finite");
  if (q.x < 0.0) return negative_mlf(q.alpha, q.x, q.deriv_order, q.precision);
  const Triple t = positive_triple(q.alpha, q.x);
  const LD v = t.d[q.deriv_order] * std::exp(t.log_scale);
  if (!std::isfinite(static_cast<double>(v))) throw RangeError("mlf: value overflows double");
  return static_cast<double>(v);
}

double rho1(double alpha) {
  if (!(alpha > 1.0 && alpha <= 2.0)) throw DomainError("rho1: alpha must lie in (1, 2]");
  return first_negative_root([alpha](double x) { return mlf(MlfQuery{alpha, x, 0, 1e-15}); },
                             "rho1");
}

double rho2(double alpha) {
  if (!(alpha > 1.0 && alpha <= 2.0)) throw DomainError("rho2: alpha must lie in (1, 2]");
  return first_negative_root(
      [alpha](double x) {
        return alpha * x * mlf(MlfQuery{alpha, x, 2, 1e-15}) +
               (alpha - 1.0) * mlf(MlfQuery{alpha, x, 1, 1e-15});
      },
      "rho2");
}

double ksharp_asymmetric(const LimitLawSpec& spec) {
  const auto s = checked(spec);
  return no_positive(s) ? rho1(s.alpha) : rho2(s.alpha);
}

double laplace_tau_sharp(const LimitLawSpec& spec, double q) {
  const auto s = checked(spec);
  check_pole(s, q);
  const Triple t = triple(s.alpha, q);
  if (no_positive(s)) return static_cast<double>(std::exp(-t.log_scale) / t.d[0]);
  const LD r = t.d[0] - s.alpha * q * t.d[1] * t.d[1] / g_scaled(s.alpha, q, t);
  return static_cast<double>(r * std::exp(t.log_scale));
}

double laplace_tau_sharp_and_tau_b(const LimitLawSpec& spec, double q, double b) {
  const auto s = checked(spec);
  if (!(b > 0.0 && b <= 1.0)) throw DomainError("b must lie in (0, 1]");
  check_pole(s, q);
  const double a = s.alpha;
  const Triple t = triple(a, q);
  if (no_positive(s)) {
    const Triple tb = triple(a, q * std::pow(1.0 - b, a));
    return static_cast<double>(tb.d[0] / t.d[0] * std::exp(tb.log_scale - t.log_scale));
  }
  const Triple tb = triple(a, q * std::pow(b, a));
  const LD r = tb.d[0] - std::pow(static_cast<LD>(b), static_cast<LD>(a - 1.0)) * a * q * tb.d[1] *
                             t.d[1] / g_scaled(a, q, t);
  return static_cast<double>(r * std::exp(tb.log_scale));
}

double laplace_xi(const LimitLawSpec& spec, double q) {
  const auto s = checked(spec);
  check_pole(s, q);
  const Triple t = triple(s.alpha, q);
  if (no_positive(s)) return static_cast<double>(std::tgamma(s.alpha + 1.0) * t.d[1] / t.d[0]);
  return static_cast<double>((s.alpha - 1.0) * t.d[1] / g_scaled(s.alpha, q, t));
}

ExitProbabilities exit_two_sided(double alpha, double q, double b, ExitForm form) {
  if (!(alpha > 1.0 && alpha <= 2.0)) throw DomainError("exit_two_sided: alpha in (1, 2]");
  if (!(q >= 0.0) || !std::isfinite(q)) throw DomainError("exit_two_sided: q must be >= 0");
  if (!(b > 0.0 && b <= 1.0)) throw DomainError("exit_two_sided: b must lie in (0, 1]");
  const Triple t = triple(alpha, q);
  const Triple tb = triple(alpha, q * std::pow(b, alpha));
  const LD low = std::pow(static_cast<LD>(b), static_cast<LD>(alpha - 1.0)) * tb.d[1] / t.d[1] *
                 std::exp(tb.log_scale - t.log_scale);
  const LD e_q = t.d[0] * std::exp(t.log_scale);
  LD e_b;
  if (form == ExitForm::Corrected) {
    e_b = tb.d[0] * std::exp(tb.log_scale);
  } else {
    const Triple tp = triple(alpha, std::pow(b, alpha));
    e_b = tp.d[0] * std::exp(tp.log_scale);
  }
  const LD survive = 1.0L - e_b + low * (e_q - 1.0L);
  return {static_cast<double>(survive), static_cast<double>(low)};
}

double scale_W(double alpha, double x) {
  if (!(alpha > 1.0 && alpha <= 2.0)) throw DomainError("scale_W: alpha in (1, 2]");
  if (!(x >= 0.0)) throw DomainError("scale_W: x must be nonnegative");
  return std::pow(x, alpha - 1.0) / std::tgamma(alpha);
}

double sample_r1(const LimitLawSpec& spec, RandomStream& rng) {
  const auto s = checked(spec);
  const double r = std::pow(rng.uniform_open(), 1.0 / (s.alpha - 1.0));
  return no_positive(s) ? r : 1.0 - r;
}

}  // namespace sinai
