#include <cmath>

#include "kernel_points.hpp"

namespace ratsys::kernels::serial {

std::vector<double> residual_linear(const Trajectory& traj, const Matrix& a) {
  std::vector<double> out;
  for (long n = 1; n <= traj.last(); ++n) out.push_back(detail::residual_linear_at(traj, a, n));
  return out;
}

std::vector<double> residual_shift(const Trajectory& traj, long shift) {
  std::vector<double> out;
  for (long n = shift + 1; n <= traj.last(); ++n) out.push_back(detail::residual_shift_at(traj, shift, n));
  return out;
}

std::optional<long> envelope_violation(const Trajectory& traj, const Matrix& a) {
  for (long n = 1; n <= traj.last(); ++n)
    if (!detail::envelope_holds_at(traj, a, n)) return n;
  return std::nullopt;
}

std::optional<long> domination_violation(const Trajectory& traj, const Matrix& aq, const Matrix& aql, long lag,
                                         long first_n) {
  for (long n = first_n; n <= traj.last(); ++n)
    if (!detail::domination_holds_at(traj, aq, aql, lag, n)) return n;
  return std::nullopt;
}

}  // namespace ratsys::kernels::serial
