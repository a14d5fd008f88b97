#include "sinai/random.hpp"

#include <cmath>

namespace sinai {

RandomStream::RandomStream(std::uint64_t seed) : identity_(seed) {
  std::uint64_t z = seed;
  for (auto& word : s_) {
    z += 0x9e3779b97f4a7c15ULL;
    word = mix64(z);
  }
}

RandomStream RandomStream::derive(std::uint64_t seed, std::uint64_t key, std::uint64_t index) {
  return RandomStream(mix64(seed ^ mix64(key ^ mix64(index + 0x632be59bd9b4e019ULL))));
}

RandomStream RandomStream::substream(std::uint64_t index) const {
  return derive(identity_, 0x5ca1ab1e0ddba11ULL, index);
}

double RandomStream::normal() { return normal_(*this); }

double RandomStream::exponential() { return -std::log(uniform_open()); }

double RandomStream::gamma(double shape) {
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(*this);
}

std::uint64_t RandomStream::poisson(double mean) {
  if (mean <= 0.0) return 0;
  if (mean < 10.0) {
    // product of uniforms; cheaper than building a distribution object
    const double limit = std::exp(-mean);
    double prod = uniform();
    std::uint64_t k = 0;
    while (prod > limit) {
      prod *= uniform();
      ++k;
    }
    return k;
  }
  // transformed rejection (Hormann's PTRS); no per-mean setup to cache
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::uint64_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0))
      return static_cast<std::uint64_t>(k);
  }
}

}  // namespace sinai
