#include "ratsys/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "ratsys/errors.hpp"

namespace ratsys {

double ResidualSequence::tail_max(double fraction) const {
  if (values.empty()) return 0.0;
  const auto n = values.size();
  auto count = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(n)));
  count = std::clamp<std::size_t>(count, 1, n);
  return *std::max_element(values.end() - static_cast<std::ptrdiff_t>(count), values.end());
}

std::string to_string(Behavior b) {
  switch (b) {
    case Behavior::kConvergedToZero: return "ConvergedToZero";
    case Behavior::kEventuallyPeriodic: return "EventuallyPeriodic";
    case Behavior::kUnbounded: return "Unbounded";
    case Behavior::kUndetermined: return "Undetermined";
  }
  return "?";
}

bool detect_zero_limit(const Trajectory& traj, double zero_tol) {
  const long from = std::max(traj.first(), traj.last() - traj.k() + 1);
  for (long n = from; n <= traj.last(); ++n)
    if (norm_inf(traj[n]) > zero_tol) return false;
  return true;
}

namespace {

bool period_passes(const Trajectory& traj, int p, double per_tol, long window) {
  const long from = traj.last() - window + 1;
  if (from - p < traj.first()) return false;
  for (long n = from; n <= traj.last(); ++n)
    if (dist_inf(traj[n], traj[n - p]) > per_tol) return false;
  return true;
}

long positive_mod(long n, long p) { return ((n % p) + p) % p; }

}  // namespace

std::optional<int> detect_period(const Trajectory& traj, int max_period, double per_tol, long window) {
  if (max_period < 1 || window < 1) return std::nullopt;
  for (int p = 1; p <= max_period; ++p) {
    if (!period_passes(traj, p, per_tol, window)) continue;
    for (int d = 1; d <= p; ++d)
      if (p % d == 0 && period_passes(traj, d, per_tol, window)) return d;
  }
  return std::nullopt;
}

std::optional<long> detect_unbounded(const Trajectory& traj, double growth_threshold,
                                     std::optional<Diverged> diverged) {
  for (long n = 1; n <= traj.last(); ++n)
    if (norm2(traj[n]) > growth_threshold) return n;
  if (diverged) return diverged->step;
  return std::nullopt;
}

ResidualSequence residual_linear(const Trajectory& traj, const Matrix& a, Execution exec) {
  if (a.dim() != static_cast<std::size_t>(traj.dim()))
    throw Error(ErrorCode::kDimensionMismatch, "matrix dimension differs from trajectory");
  return {1, exec == Execution::kParallel ? kernels::omp::residual_linear(traj, a)
                                          : kernels::serial::residual_linear(traj, a)};
}

ResidualSequence residual_shift(const Trajectory& traj, long shift, Execution exec) {
  if (shift < 1) throw Error(ErrorCode::kInvalidArgument, "shift must be at least 1");
  return {shift + 1, exec == Execution::kParallel ? kernels::omp::residual_shift(traj, shift)
                                                  : kernels::serial::residual_shift(traj, shift)};
}

bool envelope_check(const Trajectory& traj, const Matrix& a, Execution exec) {
  if (a.dim() != static_cast<std::size_t>(traj.dim()))
    throw Error(ErrorCode::kDimensionMismatch, "matrix dimension differs from trajectory");
  const double rho = spectral_radius(a);  // rejects nonsymmetric input
  if (rho > 1.0 + kRhoTol)
    throw Error(ErrorCode::kSpectralRadius, "envelope check requires spectral radius at most 1");
  const auto bad = exec == Execution::kParallel ? kernels::omp::envelope_violation(traj, a)
                                                : kernels::serial::envelope_violation(traj, a);
  return !bad.has_value();
}

bool domination_check(const Trajectory& traj, const Matrix& a, unsigned power_l, unsigned q, Execution exec) {
  if (a.dim() != static_cast<std::size_t>(traj.dim()))
    throw Error(ErrorCode::kDimensionMismatch, "matrix dimension differs from trajectory");
  const Matrix aq = power(a, q);
  const Matrix aql = power(a, q + power_l);
  const long lag = static_cast<long>(traj.k()) * power_l;
  const long first_n = std::max(1L, lag);
  const auto bad = exec == Execution::kParallel ? kernels::omp::domination_violation(traj, aq, aql, lag, first_n)
                                                : kernels::serial::domination_violation(traj, aq, aql, lag, first_n);
  return !bad.has_value();
}

long tail_window(long horizon, int max_period, double tail_fraction) {
  const auto frac = static_cast<long>(std::ceil(tail_fraction * static_cast<double>(horizon)));
  return std::max(frac, 10L * max_period);
}

AnalysisReport analyze(const Trajectory& traj, const SystemSpec& spec, const AnalysisTolerances& tol,
                       std::optional<Diverged> diverged) {
  AnalysisReport report;
  report.tolerances = tol;
  const int max_period = tol.max_period > 0 ? tol.max_period : 2 * spec.k;

  report.residuals["linear"] = residual_linear(traj, spec.A);
  report.residuals["shift_k"] = residual_shift(traj, spec.k);

  if (auto exit = detect_unbounded(traj, tol.growth_threshold, diverged)) {
    report.behavior = Behavior::kUnbounded;
    report.exit_step = exit;
    return report;
  }
  if (detect_zero_limit(traj, tol.zero_tol)) {
    report.behavior = Behavior::kConvergedToZero;
    return report;
  }
  const long window = tail_window(traj.horizon(), max_period, tol.tail_fraction);
  const auto p = detect_period(traj, max_period, tol.per_tol, window);
  if (!p) return report;

  report.behavior = Behavior::kEventuallyPeriodic;
  report.period = p;
  report.residuals["shift_p"] = residual_shift(traj, *p);
  report.limit_cycle.assign(static_cast<std::size_t>(*p), Vec{});
  report.residue_limits.assign(static_cast<std::size_t>(*p), Vec(static_cast<std::size_t>(traj.dim()), 0.0));
  for (long n = traj.last() - *p + 1; n <= traj.last(); ++n) {
    const auto a = static_cast<std::size_t>(positive_mod(n, *p));
    report.limit_cycle[a] = Vec(traj[n].begin(), traj[n].end());
  }
  constexpr int kLimitSamples = 10;
  for (long top = traj.last() - *p + 1; top <= traj.last(); ++top) {
    Vec& acc = report.residue_limits[static_cast<std::size_t>(positive_mod(top, *p))];
    int count = 0;
    for (long n = top; n >= traj.first() && count < kLimitSamples; n -= *p, ++count)
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += traj[n][i];
    for (double& x : acc) x /= count;
  }
  return report;
}

AnalysisReport analyze(const SimulationResult& run, const AnalysisTolerances& tol) {
  return analyze(run.trajectory, run.trajectory.spec(), tol, run.diverged);
}

double angular_distance(std::span<const double> x, std::span<const double> y) {
  const double nx = norm2(x), ny = norm2(y);
  if (nx == 0.0 || ny == 0.0) return 0.0;
  // chord between unit vectors -> angle; stable near zero unlike acos
  double chord = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] / nx - y[i] / ny;
    chord += d * d;
  }
  return 2.0 * std::asin(std::min(1.0, std::sqrt(chord) / 2.0));
}

}  // namespace ratsys
