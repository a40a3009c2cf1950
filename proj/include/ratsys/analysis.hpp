#pragma once

// A-posteriori diagnostics on finished trajectories. Limits are asymptotic,
// so every verdict here is evidence from a finite tail, not proof.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ratsys/kernels.hpp"
#include "ratsys/model.hpp"
#include "ratsys/simulator.hpp"

namespace ratsys {

struct AnalysisTolerances {
  double zero_tol = 1e-8;
  double per_tol = 1e-7;
  double growth_threshold = 1e6;
  /// Tail window as a fraction of the horizon, never fewer than 10 * max_period samples.
  double tail_fraction = 0.2;
  /// Largest period searched; 0 means 2k.
  int max_period = 0;

  friend bool operator==(const AnalysisTolerances&, const AnalysisTolerances&) = default;
};

/// Residual sequence r_n for n = first_n, first_n + 1, ...
struct ResidualSequence {
  long first_n = 1;
  std::vector<double> values;

  /// Max over the final `fraction` of the sequence (at least one sample);
  /// 0 for an empty sequence.
  double tail_max(double fraction = 0.2) const;
};

enum class Behavior { kConvergedToZero, kEventuallyPeriodic, kUnbounded, kUndetermined };

struct AnalysisReport {
  Behavior behavior = Behavior::kUndetermined;
  std::optional<int> period;       // kEventuallyPeriodic
  std::optional<long> exit_step;   // kUnbounded
  /// Final p stored vectors, ordered by residue n mod p.
  std::vector<Vec> limit_cycle;
  /// Mean of the last 10 samples of each residue class {v_{np+a}}, a = 0..p-1.
  std::vector<Vec> residue_limits;
  /// "linear": ||v_n - A v_{n-k}||; "shift_k": ||v_n - v_{n-k}||;
  /// "shift_p": ||v_n - v_{n-p}|| when periodic.
  std::map<std::string, ResidualSequence> residuals;
  AnalysisTolerances tolerances;
};

std::string to_string(Behavior b);

/// max over the final k stored vectors of ||v_n||_inf <= zero_tol.
bool detect_zero_limit(const Trajectory& traj, double zero_tol);

/// Smallest p <= max_period with ||v_n - v_{n-p}||_inf <= per_tol for every n
/// among the final `window` stored indices, refined to its smallest passing
/// divisor. Absent when nothing qualifies or the data are too short.
std::optional<int> detect_period(const Trajectory& traj, int max_period, double per_tol, long window);

/// First n >= 1 with ||v_n||_2 > growth_threshold, else the divergence step.
std::optional<long> detect_unbounded(const Trajectory& traj, double growth_threshold,
                                     std::optional<Diverged> diverged = std::nullopt);

ResidualSequence residual_linear(const Trajectory& traj, const Matrix& a,
                                 Execution exec = Execution::kParallel);
ResidualSequence residual_shift(const Trajectory& traj, long shift, Execution exec = Execution::kParallel);

/// h(Av_n) <= h(v_n) <= h(Av_{n-k}) <= h(v_{n-k}) for every n >= 1, h(v) = <v, v>.
/// Requires symmetric A with spectral radius at most 1 (+ rho_tol).
bool envelope_check(const Trajectory& traj, const Matrix& a, Execution exec = Execution::kParallel);

/// (A^q v_n)_i <= (A^{q+L} v_{n-kL})_i for every n >= max(1, kL) and every i.
bool domination_check(const Trajectory& traj, const Matrix& a, unsigned power_l, unsigned q,
                      Execution exec = Execution::kParallel);

/// Samples used for the tail window at a given horizon.
long tail_window(long horizon, int max_period, double tail_fraction);

/// Aggregates the detectors with precedence
/// Unbounded > ConvergedToZero > EventuallyPeriodic > Undetermined.
AnalysisReport analyze(const Trajectory& traj, const SystemSpec& spec, const AnalysisTolerances& tol = {},
                       std::optional<Diverged> diverged = std::nullopt);
AnalysisReport analyze(const SimulationResult& run, const AnalysisTolerances& tol = {});

/// Angle in radians between x and y; 0 when either is the zero vector.
double angular_distance(std::span<const double> x, std::span<const double> y);

}  // namespace ratsys
