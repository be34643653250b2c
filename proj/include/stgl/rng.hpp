#pragma once

// Deterministic, portable random number generation.
//
// Every random draw in the library flows through Rng: std::mt19937_64 (whose
// output sequence is fixed by the C++ standard) plus hand-rolled uniform,
// Bernoulli and Box-Muller normal transforms. std::*_distribution is avoided
// because its output is implementation-defined; with these transforms an
// identical seed yields an identical stream on every platform.

#include <cmath>
#include <cstdint>
#include <random>

namespace stgl {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  // Standard normal via Box-Muller; the sine mate of each pair is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] keeps the log finite.
    const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * kPi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

private:
  static constexpr double kPi = 3.14159265358979323846;

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// One splitmix64 scramble; derives independent substream seeds from a base
// seed and a salt without correlating nearby values.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace stgl
