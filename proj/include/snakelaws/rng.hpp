#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace snakelaws {

/// Seedable, splittable pseudo-random stream. The pair (seed, stream_index)
/// fully determines the sequence; variate transforms are written out here so
/// that draws are bit-identical across standard libraries.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_index = 0)
      : seed_(seed), stream_(stream_index), engine_(make_seed(seed, stream_index)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_; }
  std::string descriptor() const { return std::to_string(seed_) + ":" + std::to_string(stream_); }

  /// Independent child stream; the same (parent, key) always yields the same child.
  RngStream split(std::uint64_t key) const { return RngStream(seed_, mix(stream_ * 0x9E3779B97F4A7C15ULL + key + 1)); }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  double exponential() { return -std::log(uniform()); }

  /// Standard normal by Box-Muller; the second variate is cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double t = 2.0 * std::numbers::pi * uniform();
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  /// Uniform integer in [0, n) by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do x = engine_(); while (x >= limit);
    return x % n;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {  // splitmix64 finalizer
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  static std::seed_seq::result_type lo(std::uint64_t v) { return static_cast<std::uint32_t>(v); }
  static std::seed_seq::result_type hi(std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); }
  static std::mt19937_64 make_seed(std::uint64_t seed, std::uint64_t stream) {
    const std::uint64_t a = mix(seed), b = mix(stream ^ 0xD1B54A32D192ED03ULL);
    std::seed_seq seq{lo(a), hi(a), lo(b), hi(b)};
    return std::mt19937_64(seq);
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace snakelaws
