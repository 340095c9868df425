#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

namespace fdi {

namespace rng_detail {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (char c : s) {
    h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
    h *= 0x100000001B3ull;
  }
  return h;
}

}  // namespace rng_detail

/// Counter-based pseudo-random stream (SplitMix64 finalizer in counter mode).
///
/// A stream is identified by a 64-bit key derived from a master seed and a
/// textual label. Draw i depends only on (key, i), so draws can be evaluated
/// in any order and from any thread with identical results. Streams are
/// single-purpose: never mix u01 and normal counters on the same label.
class RandomStream {
 public:
  RandomStream() : key_(0) {}

  RandomStream(std::uint64_t master_seed, std::string_view label)
      : key_(rng_detail::mix64(rng_detail::mix64(master_seed + rng_detail::kGolden) ^
                               rng_detail::fnv1a64(label))) {}

  /// Derive a sub-stream, e.g. per trial or per sensor.
  RandomStream derive(std::string_view label) const {
    RandomStream s;
    s.key_ = rng_detail::mix64(rng_detail::mix64(key_) ^ rng_detail::fnv1a64(label));
    return s;
  }

  std::uint64_t bits(std::uint64_t counter) const {
    return rng_detail::mix64(key_ + (counter + 1) * rng_detail::kGolden);
  }

  /// Uniform on [0, 1), 53-bit mantissa.
  double u01(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(std::uint64_t counter, double lo, double hi) const {
    return lo + (hi - lo) * u01(counter);
  }

  /// Standard normal via Box-Muller; consumes counters 2c and 2c+1.
  double normal(std::uint64_t counter) const {
    const double u1 = u01(2 * counter);
    const double u2 = u01(2 * counter + 1);
    // 1-u1 is in (0, 1], so the log is finite.
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_;
};

}  // namespace fdi
