#pragma once

// Reproducible randomness: MT19937-64 (std::mt19937_64, whose output sequence
// is fixed by the C++ standard) with doubles formed from the top 53 bits.
// std::uniform_real_distribution is avoided because its output differs
// between standard library implementations.

#include <cstdint>
#include <random>

#include "ratsys/linalg.hpp"
#include "ratsys/model.hpp"

namespace ratsys {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

Vec random_vector(Rng& rng, std::size_t m, double lo, double hi);

/// k history vectors, each uniform on [0, init_max]^m.
InitialConditions random_initial_conditions(Rng& rng, int k, int m, double init_max);

}  // namespace ratsys
