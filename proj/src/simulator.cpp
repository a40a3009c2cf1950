#include "ratsys/simulator.hpp"

#include <string>

#include "ratsys/errors.hpp"
#include "step_kernel.hpp"

namespace ratsys {

StepResult step(const SystemSpec& spec, std::span<const Vec> window, long n) {
  require_valid(spec);
  if (window.size() != static_cast<std::size_t>(spec.k))
    throw Error(ErrorCode::kDimensionMismatch, "step window must hold k vectors");
  for (const Vec& v : window) {
    if (v.size() != static_cast<std::size_t>(spec.m))
      throw Error(ErrorCode::kDimensionMismatch, "step window vector has wrong dimension");
    for (double x : v)
      if (!std::isfinite(x) || x < 0.0)
        throw Error(ErrorCode::kInvalidArgument, "step window must be nonnegative and finite");
  }
  Vec out(static_cast<std::size_t>(spec.m));
  const auto prev = [&](int d) -> std::span<const double> { return window[window.size() - d]; };
  if (!detail::rational_step(spec, prev, out)) return Diverged{n};
  return out;
}

namespace {

void check_horizon(long horizon) {
  if (horizon < 1) throw Error(ErrorCode::kInvalidArgument, "horizon must be at least 1");
}

}  // namespace

SimulationResult simulate(const SystemSpec& spec, const InitialConditions& init, long horizon) {
  require_valid(spec);
  check_horizon(horizon);
  SimulationResult res{Trajectory(spec, init, horizon), std::nullopt};
  Trajectory& traj = res.trajectory;
  const SystemSpec& s = traj.spec();
  Vec next(static_cast<std::size_t>(s.m));
  for (long n = 1; n <= horizon; ++n) {
    const auto prev = [&](int d) { return traj[n - d]; };
    if (!detail::rational_step(s, prev, next)) {
      res.diverged = Diverged{n};
      break;
    }
    traj.append(next);
  }
  return res;
}

SimulationResult simulate_linear(const Matrix& a, int k, const InitialConditions& init, long horizon) {
  SystemSpec spec = SystemSpec::linear(k, a);
  require_valid(spec);
  check_horizon(horizon);
  SimulationResult res{Trajectory(std::move(spec), init, horizon), std::nullopt};
  Trajectory& traj = res.trajectory;
  for (long n = 1; n <= horizon; ++n) {
    Vec u = a * traj[n - k];
    bool finite = true;
    for (double x : u) finite = finite && std::isfinite(x);
    if (!finite) {
      res.diverged = Diverged{n};
      break;
    }
    traj.append(u);
  }
  return res;
}

std::vector<SimulationResult> simulate_batch(const SystemSpec& spec, std::span<const InitialConditions> inits,
                                             long horizon, Execution exec) {
  require_valid(spec);
  check_horizon(horizon);
  for (const auto& init : inits) {
    const auto problems = validate(init, spec);
    if (!problems.empty()) throw Error(ErrorCode::kInvalidInitialConditions, problems.front());
  }
  std::vector<std::optional<SimulationResult>> slots(inits.size());
  const long count = static_cast<long>(inits.size());
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (long t = 0; t < count; ++t) slots[t].emplace(simulate(spec, inits[t], horizon));
  } else {
    for (long t = 0; t < count; ++t) slots[t].emplace(simulate(spec, inits[t], horizon));
  }
  std::vector<SimulationResult> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace ratsys
