// random.hpp
//
// Portable seeded generators for the experiment inputs.  std distributions
// are implementation-defined, so samples are drawn from raw 64-bit words to
// keep reports bit-identical across standard libraries.

#pragma once

#include <cstdint>
#include <random>

#include "ergavg/gridfn.hpp"

namespace ergavg {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Generator for trial `index` of an experiment seeded with `seed`.
  static Rng forTrial(std::uint64_t seed, std::uint64_t index) { return Rng(seed ^ index); }

  std::uint64_t bits() { return engine_(); }
  // Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double rademacher() { return (engine_() >> 63) != 0 ? 1.0 : -1.0; }
  Complex unitPhase() { return expi(uniform()); }

 private:
  std::mt19937_64 engine_;
};

// Random +-1 samples on [lo, lo + length).
inline GridFunction randomSigns(Rng& rng, std::int64_t lo, std::int64_t length) {
  std::vector<Complex> v(static_cast<std::size_t>(length));
  for (auto& z : v) z = rng.rademacher();
  return GridFunction(lo, std::move(v));
}

// Random unit-modulus complex samples on [lo, lo + length).
inline GridFunction randomPhases(Rng& rng, std::int64_t lo, std::int64_t length) {
  std::vector<Complex> v(static_cast<std::size_t>(length));
  for (auto& z : v) z = rng.unitPhase();
  return GridFunction(lo, std::move(v));
}

}  // namespace ergavg
