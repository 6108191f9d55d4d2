#pragma once

#include <cstdint>
#include <random>

namespace kacforge {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

struct Tolerances {
  double equality = 1e-8;
  double integer_residual = 1e-6;
  double axiom = 1e-9;
};

/// Seeded generator with a platform-independent mapping to doubles
/// (std::uniform_real_distribution is implementation-defined).
class Rng {
public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform in [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }
  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

private:
  std::mt19937_64 engine_;
};

} // namespace kacforge
