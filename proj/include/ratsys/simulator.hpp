#pragma once

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "ratsys/kernels.hpp"
#include "ratsys/model.hpp"

namespace ratsys {

/// A step produced a non-finite component. Unboundedness is an expected
/// outcome for rho(A) > 1, so this is data rather than an exception.
struct Diverged {
  long step = 0;
  friend bool operator==(const Diverged&, const Diverged&) = default;
};

using StepResult = std::variant<Vec, Diverged>;

/// One application of the recurrence. `window` holds v_{n-k}, ..., v_{n-1}
/// (oldest first); `n` only labels a Diverged result.
StepResult step(const SystemSpec& spec, std::span<const Vec> window, long n = 1);

struct SimulationResult {
  Trajectory trajectory;
  /// Set when iteration stopped early; trajectory then ends at step - 1.
  std::optional<Diverged> diverged;
};

/// Forward iteration for n = 1..horizon. Bit-for-bit deterministic.
SimulationResult simulate(const SystemSpec& spec, const InitialConditions& init, long horizon);

/// Comparison system u_n = A u_{n-k} with the same initial conditions.
SimulationResult simulate_linear(const Matrix& a, int k, const InitialConditions& init, long horizon);

/// Independent runs of one spec, one per initial condition. Results are in
/// input order regardless of execution policy.
std::vector<SimulationResult> simulate_batch(const SystemSpec& spec, std::span<const InitialConditions> inits,
                                             long horizon, Execution exec = Execution::kParallel);

}  // namespace ratsys
