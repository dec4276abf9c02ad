#pragma once

#include <cstdint>
#include <random>

namespace cfdyn {

/// Seedable, splittable generator: mt19937_64 keyed by std::seed_seq over
/// (seed, stream). Both the engine and seed_seq are fully specified by the
/// standard, and uniform() uses the top 53 bits directly, so a given
/// (seed, stream) yields the same numbers on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), engine_(make_engine(seed, stream)) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Independent stream derived from the same seed.
  Rng split(std::uint64_t stream) const { return Rng(seed_, stream); }

 private:
  static std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace cfdyn
