#pragma once

// Data-parallel scans over a stored trajectory. Each kernel exists twice: a
// plain serial loop kept as the reference, and an OpenMP version used by the
// public analysis entry points. Both must produce bit-identical output; the
// per-n work is independent so no reduction reorders floating-point sums.

#include <optional>
#include <vector>

#include "ratsys/linalg.hpp"

namespace ratsys {

class Trajectory;

enum class Execution { kSerial, kParallel };

/// a <= b within the comparison slack used by the proof-machinery checks:
/// 1e-12 absolute, scaled up by |b| once |b| exceeds 1.
inline bool leq_with_slack(double a, double b) {
  const double scale = b > 1.0 ? b : (b < -1.0 ? -b : 1.0);
  return a <= b + 1e-12 * scale;
}

namespace kernels::serial {

/// ||v_n - A v_{n-k}||_2 for n = 1..last.
std::vector<double> residual_linear(const Trajectory& traj, const Matrix& a);
/// ||v_n - v_{n-shift}||_2 for n = shift+1..last.
std::vector<double> residual_shift(const Trajectory& traj, long shift);
/// First n >= 1 breaking h(Av_n) <= h(v_n) <= h(Av_{n-k}) <= h(v_{n-k}).
std::optional<long> envelope_violation(const Trajectory& traj, const Matrix& a);
/// First n >= first_n with (aq v_n)_i > (aql v_{n-kL})_i for some i.
std::optional<long> domination_violation(const Trajectory& traj, const Matrix& aq, const Matrix& aql, long lag,
                                         long first_n);

}  // namespace kernels::serial

namespace kernels::omp {

std::vector<double> residual_linear(const Trajectory& traj, const Matrix& a);
std::vector<double> residual_shift(const Trajectory& traj, long shift);
std::optional<long> envelope_violation(const Trajectory& traj, const Matrix& a);
std::optional<long> domination_violation(const Trajectory& traj, const Matrix& aq, const Matrix& aql, long lag,
                                         long first_n);

}  // namespace kernels::omp

}  // namespace ratsys
