#include "sinai/stable.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sinai/error.hpp"

namespace sinai {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEdgeTol = 1e-12;

bool near(double a, double b) { return std::abs(a - b) <= kEdgeTol; }

}  // namespace

std::string to_string(Spectral s) {
  switch (s) {
    case Spectral::TwoSidedJumps: return "two_sided";
    case Spectral::NoPositiveJumps: return "no_positive_jumps";
    case Spectral::NoNegativeJumps: return "no_negative_jumps";
    case Spectral::Gaussian: return "gaussian";
  }
  return "unknown";
}

Spectral spectral_from_string(const std::string& s) {
  if (s == "two_sided") return Spectral::TwoSidedJumps;
  if (s == "no_positive_jumps" || s == "npj") return Spectral::NoPositiveJumps;
  if (s == "no_negative_jumps" || s == "nnj") return Spectral::NoNegativeJumps;
  if (s == "gaussian") return Spectral::Gaussian;
  throw DomainError("unknown spectral type '" + s + "'");
}

StableLaw StableLaw::make(double alpha, double p, double gamma) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("StableLaw: alpha must lie in (0, 2]");
  if (!(p > 0.0 && p < 1.0)) throw DomainError("StableLaw: p must lie in (0, 1)");
  if (!(gamma > 0.0)) throw DomainError("StableLaw: gamma must be positive");
  const double q = 1.0 - p;
  if (alpha * p > 1.0 + kEdgeTol || alpha * q > 1.0 + kEdgeTol)
    throw DomainError("StableLaw: need alpha p <= 1 and alpha q <= 1");

  StableLaw law;
  law.alpha_ = alpha;
  law.p_ = p;
  law.gamma_ = gamma;
  law.sigma_ = std::pow(gamma, 1.0 / alpha);

  if (alpha == 2.0) {
    if (!near(p, 0.5)) throw DomainError("StableLaw: alpha = 2 forces p = 1/2");
    law.p_ = 0.5;
    law.spectral_ = Spectral::Gaussian;
    law.beta_ = 0.0;
    return law;
  }
  if (alpha == 1.0) {
    if (!near(p, 0.5))
      throw UnsupportedParameterization(
          "StableLaw: alpha = 1 is only supported for the symmetric Cauchy law");
    law.p_ = 0.5;
    law.spectral_ = Spectral::TwoSidedJumps;
    law.beta_ = 0.0;
    return law;
  }

  if (alpha > 1.0 && near(alpha * p, 1.0)) {
    law.p_ = 1.0 / alpha;
    law.spectral_ = Spectral::NoPositiveJumps;
    law.beta_ = -1.0;
  } else if (alpha > 1.0 && near(alpha * q, 1.0)) {
    law.p_ = 1.0 - 1.0 / alpha;
    law.spectral_ = Spectral::NoNegativeJumps;
    law.beta_ = 1.0;
  } else {
    law.spectral_ = Spectral::TwoSidedJumps;
    law.beta_ = std::tan(kPi * alpha * (p - 0.5)) / std::tan(kPi * alpha / 2.0);
  }
  return law;
}

StableLaw StableLaw::gaussian(double gamma) { return make(2.0, 0.5, gamma); }

StableLaw StableLaw::symmetric(double alpha, double gamma) { return make(alpha, 0.5, gamma); }

StableLaw StableLaw::one_sided(double alpha, Spectral side) {
  if (!(alpha > 1.0 && alpha <= 2.0))
    throw DomainError("StableLaw::one_sided: completely asymmetric laws need alpha in (1, 2]");
  if (alpha == 2.0) return gaussian(1.0);
  // For beta = -1, E exp(l S) = exp(-sigma^alpha l^alpha / cos(pi alpha / 2)); the
  // exponent constant is 1 when gamma = sigma^alpha = -cos(pi alpha / 2).
  const double gamma = -std::cos(kPi * alpha / 2.0);
  switch (side) {
    case Spectral::NoPositiveJumps: return make(alpha, 1.0 / alpha, gamma);
    case Spectral::NoNegativeJumps: return make(alpha, 1.0 - 1.0 / alpha, gamma);
    default: throw DomainError("StableLaw::one_sided: side must be one-sided");
  }
}

std::string StableLaw::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "stable(alpha=" << alpha_ << ", p=" << p_ << ", gamma=" << gamma_
     << ", spectral=" << to_string(spectral_) << ")";
  return os.str();
}

std::complex<double> cf_stable(const StableLaw& law, double lambda) {
  if (lambda == 0.0) return {1.0, 0.0};
  const double mag = law.gamma() * std::pow(std::abs(lambda), law.alpha());
  const double skew = law.alpha() == 2.0 ? 0.0 : std::tan(kPi * law.alpha() * (law.p() - 0.5));
  const double sign = lambda > 0.0 ? 1.0 : -1.0;
  return std::exp(std::complex<double>(-mag, mag * sign * skew));
}

double sample_stable(const StableLaw& law, RandomStream& rng) {
  const double alpha = law.alpha();
  if (law.spectral() == Spectral::Gaussian) return std::sqrt(2.0 * law.gamma()) * rng.normal();

  const double v = kPi * (rng.uniform_open() - 0.5);
  if (alpha == 1.0) return law.sigma() * std::tan(v);

  const double w = rng.exponential();
  const double zeta = law.beta() * std::tan(kPi * alpha / 2.0);
  const double b = std::atan(zeta) / alpha;
  const double s = std::pow(1.0 + zeta * zeta, 1.0 / (2.0 * alpha));
  const double av = alpha * (v + b);
  const double x = s * std::sin(av) / std::pow(std::cos(v), 1.0 / alpha) *
                   std::pow(std::cos(v - av) / w, (1.0 - alpha) / alpha);
  return law.sigma() * x;
}

CadlagGrid sample_stable_path(const StableLaw& law, double horizon, std::size_t n_steps,
                              RandomStream& rng) {
  if (n_steps < 1) throw DomainError("sample_stable_path: n_steps must be >= 1");
  if (!(horizon > 0.0)) throw DomainError("sample_stable_path: horizon must be positive");
  const double h = horizon / static_cast<double>(n_steps);
  const double scale = std::pow(h, 1.0 / law.alpha());
  std::vector<double> values(n_steps);
  double acc = 0.0;
  for (std::size_t k = 0; k < n_steps; ++k) {
    acc += scale * sample_stable(law, rng);
    values[k] = acc;
  }
  return CadlagGrid::forward(values, h);
}

NormingFunctions NormingFunctions::power(double alpha, double q) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("NormingFunctions: alpha in (0, 2]");
  if (!(q > 0.0 && q < 1.0)) throw DomainError("NormingFunctions: q in (0, 1)");
  NormingFunctions nf;
  nf.alpha_ = alpha;
  nf.q_ = q;
  nf.a_ = [alpha](double x) { return std::pow(x, 1.0 / alpha); };
  nf.a_inv_ = [alpha](double x) { return std::pow(x, alpha); };
  nf.b_ = [q](double x) { return std::pow(x, 1.0 / q); };
  nf.b_inv_ = [q](double x) { return std::pow(x, q); };
  return nf;
}

NormingFunctions::NormingFunctions(Map a, Map a_inv, Map b, Map b_inv)
    : a_(std::move(a)), a_inv_(std::move(a_inv)), b_(std::move(b)), b_inv_(std::move(b_inv)) {
  if (!a_ || !a_inv_ || !b_ || !b_inv_) throw DomainError("NormingFunctions: empty map");
  if (std::abs(a_(1.0) - 1.0) > 1e-12 || std::abs(b_(1.0) - 1.0) > 1e-12)
    throw DomainError("NormingFunctions: a(1) and b(1) must equal 1");
}

namespace {

double checked(const NormingFunctions::Map& f, double x) {
  if (!(x >= 1.0)) throw DomainError("norming functions are defined on [1, inf)");
  return f(x);
}

}  // namespace

double NormingFunctions::a(double x) const { return checked(a_, x); }
double NormingFunctions::a_inv(double x) const { return checked(a_inv_, x); }
double NormingFunctions::b(double x) const { return checked(b_, x); }
double NormingFunctions::b_inv(double x) const { return checked(b_inv_, x); }

double norming_eval(const NormingFunctions& nf, Norming which, double x) {
  switch (which) {
    case Norming::A: return nf.a(x);
    case Norming::AInv: return nf.a_inv(x);
    case Norming::B: return nf.b(x);
    case Norming::BInv: return nf.b_inv(x);
  }
  throw DomainError("norming_eval: unknown map");
}

}  // namespace sinai
