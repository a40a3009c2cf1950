#include "ratsys/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "ratsys/errors.hpp"
#include "ratsys/linalg.hpp"
#include "ratsys/rng.hpp"

namespace ratsys {

namespace {

constexpr std::uint64_t kCandidateSeed = 0x9E3779B97F4A7C15ULL;

std::optional<Vec> as_nonnegative_unit(Vec w) {
  for (double& x : w) {
    if (x < -kEigTol) return std::nullopt;
    x = std::max(x, 0.0);
  }
  const double n = norm2(w);
  if (n == 0.0) return std::nullopt;
  for (double& x : w) x /= n;
  return w;
}

// For nonnegative A with spectral radius 1, (A + I)/2 has spectrum in [0, 1]
// and its powers converge to a nonnegative projector onto the eigenvalue-1
// space, so iterating from a positive start lands on a nonnegative eigenvector.
std::optional<Vec> shifted_power_iteration(const Matrix& a) {
  const std::size_t m = a.dim();
  Matrix shifted = a;
  for (std::size_t i = 0; i < m; ++i) shifted(i, i) += 1.0;
  shifted = shifted.scaled(0.5);
  Vec w(m, 1.0 / std::sqrt(static_cast<double>(m)));
  for (int it = 0; it < kMaxPowerIters; ++it) {
    Vec y = shifted * w;
    const double n = norm2(y);
    if (n == 0.0) return std::nullopt;
    for (double& x : y) x /= n;
    w = std::move(y);
    if (dist_inf(a * w, w) <= 1e-15) break;
  }
  if (dist_inf(a * w, w) > kEigTol) return std::nullopt;
  return as_nonnegative_unit(w);
}

}  // namespace

InitialConditions seed_with_leading(int k, Vec lead) {
  InitialConditions init;
  const std::size_t m = lead.size();
  init.history.assign(static_cast<std::size_t>(k), Vec(m, 0.0));
  init.history.front() = std::move(lead);
  return init;
}

bool is_period2k_form(const Matrix& a) {
  return a.dim() == 2 && a(0, 0) == 0.0 && a(1, 1) == 0.0 && std::abs(a(0, 1) * a(1, 0) - 1.0) <= kRhoTol;
}

InitialConditions construct_periodic_seed(const SystemSpec& spec) {
  require_valid(spec);
  const Matrix& a = spec.A;

  if (spec.m >= 2 && a.positive()) {
    const PerronPair pp = perron_pair(a);
    if (std::abs(pp.r - 1.0) > kRhoTol)
      throw Error(ErrorCode::kSpectralRadius,
                  "periodic seed requires spectral radius 1 (Perron value " + std::to_string(pp.r) + ")");
    return seed_with_leading(spec.k, pp.w);
  }

  if (!a.symmetric())
    throw Error(ErrorCode::kWrongMatrixForm, "periodic seed requires a positive or a symmetric matrix");
  const EigenDecomposition eig = eig_symmetric(a);
  if (std::abs(eig.spectral_radius - 1.0) > kRhoTol)
    throw Error(ErrorCode::kSpectralRadius,
                "periodic seed requires spectral radius 1 (got " + std::to_string(eig.spectral_radius) + ")");
  for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i) {
    if (std::abs(eig.eigenvalues[i] - 1.0) > kRhoTol) continue;
    if (auto w = as_nonnegative_unit(eig.eigenvectors[i])) return seed_with_leading(spec.k, std::move(*w));
  }
  if (auto w = shifted_power_iteration(a)) return seed_with_leading(spec.k, std::move(*w));
  throw Error(ErrorCode::kNoNonnegativeEigenvector, "no nonnegative eigenvector for eigenvalue 1");
}

InitialConditions construct_period2k_seed(const SystemSpec& spec, double a, double b) {
  require_valid(spec);
  if (!is_period2k_form(spec.A))
    throw Error(ErrorCode::kWrongMatrixForm, "period-2k seed requires A = [[0, gamma], [1/gamma, 0]]");
  if (!(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw Error(ErrorCode::kInvalidArgument, "period-2k seed components must be nonnegative and finite");
  const double gamma = spec.A(0, 1);
  if (a - gamma * b == 0.0)
    throw Error(ErrorCode::kExcludedSeed, "a = gamma * b gives a period-k solution, not period 2k");
  return seed_with_leading(spec.k, {a, b});
}

InitialConditions construct_unbounded_seed(const SystemSpec& spec) {
  require_valid(spec);
  if (!spec.A.symmetric()) throw Error(ErrorCode::kNotSymmetric, "unbounded seed requires a symmetric matrix");
  const EigenDecomposition eig = eig_symmetric(spec.A);
  if (eig.spectral_radius <= 1.0 + kRhoTol)
    throw Error(ErrorCode::kSpectralRadius,
                "unbounded seed requires spectral radius > 1 (got " + std::to_string(eig.spectral_radius) + ")");

  const auto m = static_cast<std::size_t>(spec.m);
  std::vector<Vec> candidates;
  candidates.emplace_back(m, 1.0);
  Vec ramp(m);
  for (std::size_t i = 0; i < m; ++i) ramp[i] = static_cast<double>(i + 1);
  candidates.push_back(ramp);
  Rng rng(kCandidateSeed);
  for (std::size_t t = 0; t < m; ++t) candidates.push_back(random_vector(rng, m, 0.0, 1.0));

  for (const Vec& c : candidates) {
    const bool generic = std::all_of(eig.eigenvectors.begin(), eig.eigenvectors.end(),
                                     [&](const Vec& w) { return std::abs(dot(c, w)) > kEigTol; });
    if (generic) return seed_with_leading(spec.k, c);
  }
  throw Error(ErrorCode::kNoGenericCandidate,
              "no candidate seed has a nonzero projection on every eigenvector");
}

}  // namespace ratsys
