#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>

namespace sinai {

/// SplitMix64 finalizer; used to hash (seed, key, index) triples into
/// independent generator states.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// FNV-1a, for turning experiment names into stream keys.
constexpr std::uint64_t hash_name(const char* s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (; *s != '\0'; ++s) {
    h ^= static_cast<unsigned char>(*s);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Splittable pseudo-random stream (xoshiro256++ core).
///
/// Streams are addressed by a 64-bit identity. `substream(i)` derives a child
/// whose identity is a hash of (parent identity, i), so every Monte Carlo
/// task gets the same draws no matter which worker runs it or in what order.
/// Satisfies UniformRandomBitGenerator.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed = 0);

  /// Stream keyed by (seed, key, index).
  static RandomStream derive(std::uint64_t seed, std::uint64_t key, std::uint64_t index);

  /// Child stream; does not advance *this.
  RandomStream substream(std::uint64_t index) const;

  std::uint64_t identity() const noexcept { return identity_; }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
  /// Uniform on (0, 1).
  double uniform_open() noexcept {
    return (static_cast<double>((*this)() >> 12) + 0.5) * 0x1.0p-52;
  }
  double normal();
  double exponential();
  double gamma(double shape);
  std::uint64_t poisson(double mean);

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_{};
  std::uint64_t identity_ = 0;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace sinai
