#pragma once

#include <cstdint>
#include <random>

namespace rulefront {

// Thin wrapper over mt19937_64 exposing only the draws the library needs.
// The distributions are implemented by hand so that a seed reproduces the
// same stream on every standard library, which the std::*_distribution
// classes do not guarantee.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t uniform_index(std::uint64_t bound) {
    // Rejection sampling to avoid modulo bias.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return draw % bound;
  }

  // Uniform in [0, 1) with 53 bits of precision.
  double uniform_real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform_real() < p; }

  bool coin_flip() { return (engine_() & 1u) != 0; }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rulefront
