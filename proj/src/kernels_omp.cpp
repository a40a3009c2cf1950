#include <climits>
#include <cmath>

#include "kernel_points.hpp"

namespace ratsys::kernels::omp {

std::vector<double> residual_linear(const Trajectory& traj, const Matrix& a) {
  const long count = traj.last() > 0 ? traj.last() : 0;
  std::vector<double> out(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static)
  for (long idx = 0; idx < count; ++idx) out[idx] = detail::residual_linear_at(traj, a, idx + 1);
  return out;
}

std::vector<double> residual_shift(const Trajectory& traj, long shift) {
  const long count = traj.last() - shift > 0 ? traj.last() - shift : 0;
  std::vector<double> out(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(static)
  for (long idx = 0; idx < count; ++idx) out[idx] = detail::residual_shift_at(traj, shift, idx + shift + 1);
  return out;
}

std::optional<long> envelope_violation(const Trajectory& traj, const Matrix& a) {
  long first = LONG_MAX;
  const long last = traj.last();
#pragma omp parallel for schedule(static) reduction(min : first)
  for (long n = 1; n <= last; ++n)
    if (n < first && !detail::envelope_holds_at(traj, a, n)) first = n;
  if (first == LONG_MAX) return std::nullopt;
  return first;
}

std::optional<long> domination_violation(const Trajectory& traj, const Matrix& aq, const Matrix& aql, long lag,
                                         long first_n) {
  long first = LONG_MAX;
  const long last = traj.last();
#pragma omp parallel for schedule(static) reduction(min : first)
  for (long n = first_n; n <= last; ++n)
    if (n < first && !detail::domination_holds_at(traj, aq, aql, lag, n)) first = n;
  if (first == LONG_MAX) return std::nullopt;
  return first;
}

}  // namespace ratsys::kernels::omp
