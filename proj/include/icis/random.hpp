#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "icis/scalar.hpp"

namespace icis {

/// Seeded source of random rationals. Uses only the engine's raw output (no standard
/// distributions) so draws are identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t height = 100) : seed_(seed), height_(height), gen_(mix(seed)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t height() const { return height_; }

  std::uint64_t next() { return gen_(); }

  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    for (;;) {
      std::uint64_t v = gen_();
      if (v < limit) return v % n;
    }
  }

  // Nonzero numerator in [-h, h], denominator in [1, h].
  Rational rational() {
    auto h = static_cast<long>(height_);
    long num = 0;
    while (num == 0) num = static_cast<long>(below(2 * height_ + 1)) - h;
    long den = 1 + static_cast<long>(below(height_));
    return Rational(num, den);
  }

  // Independent stream for a named purpose; the parent stream is not advanced.
  Rng derive(std::string_view tag) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : tag) h = (h ^ c) * 1099511628211ULL;
    return Rng(mix(seed_ ^ h), height_);
  }
  Rng derive(std::string_view tag, std::uint64_t index) const {
    Rng r = derive(tag);
    r.seed_ = mix(r.seed_ + 0x9e3779b97f4a7c15ULL * (index + 1));
    r.gen_.seed(mix(r.seed_));
    return r;
  }
  // Fresh child stream; successive calls give different children.
  Rng split() {
    ++counter_;
    return Rng(mix(seed_ + counter_ * 0xbf58476d1ce4e5b9ULL), height_);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t height_;
  std::mt19937_64 gen_;
  std::uint64_t counter_ = 0;
};

}  // namespace icis
