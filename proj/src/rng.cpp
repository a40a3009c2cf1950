#include "ratsys/rng.hpp"

namespace ratsys {

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

Vec random_vector(Rng& rng, std::size_t m, double lo, double hi) {
  Vec v(m);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

InitialConditions random_initial_conditions(Rng& rng, int k, int m, double init_max) {
  InitialConditions init;
  init.history.reserve(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t) init.history.push_back(random_vector(rng, static_cast<std::size_t>(m), 0.0, init_max));
  return init;
}

}  // namespace ratsys
