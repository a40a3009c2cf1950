#include <gtest/gtest.h>

#include <cmath>

#include "ratsys/analysis.hpp"
#include "ratsys/constructors.hpp"
#include "ratsys/errors.hpp"
#include "ratsys/simulator.hpp"
#include "support/generators.hpp"

using namespace ratsys;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no ratsys::Error thrown";
  return ErrorCode::kInvalidArgument;
}

void expect_single_leading(const InitialConditions& init, int k) {
  ASSERT_EQ(init.history.size(), static_cast<std::size_t>(k));
  EXPECT_GT(norm_inf(init.history.front()), 0.0);
  for (int t = 1; t < k; ++t) EXPECT_EQ(norm_inf(init.history[t]), 0.0);
}

// max over n of ||v_n - v_{n-shift}||_inf on generated steps
double max_shift(const Trajectory& t, long shift) {
  double worst = 0.0;
  for (long n = std::max(1L, t.first() + shift); n <= t.last(); ++n)
    worst = std::max(worst, dist_inf(t[n], t[n - shift]));
  return worst;
}

SystemSpec case3(int k, double gamma, std::vector<double> denom) {
  SystemSpec s = SystemSpec::linear(k, Matrix::from_rows({{0.0, gamma}, {1.0 / gamma, 0.0}}));
  for (std::size_t i = 0; i < s.denom.size(); ++i) s.denom[i] = denom[i % denom.size()];
  return s;
}

}  // namespace

TEST(PeriodicSeed, Examples) {
  SystemSpec s = SystemSpec::linear(2, Matrix::from_rows({{0.5, 0.5}, {0.5, 0.5}}));
  s.denom = {1.0, 0.5, 0.5, 1.0};
  const InitialConditions seed = construct_periodic_seed(s);
  expect_single_leading(seed, 2);
  EXPECT_NEAR(seed.history[0][0], 1.0 / std::sqrt(2.0), kEigTol);
  EXPECT_NEAR(seed.history[0][1], 1.0 / std::sqrt(2.0), kEigTol);
  const auto run = simulate(s, seed, 100);
  EXPECT_LE(max_shift(run.trajectory, 2), 1e-12);
  EXPECT_GT(max_shift(run.trajectory, 1), 0.1);

  const SystemSpec diag = SystemSpec::linear(3, Matrix::from_rows({{1.0, 0.0}, {0.0, 0.4}}));
  EXPECT_EQ(construct_periodic_seed(diag).history.front(), (Vec{1.0, 0.0}));
  const SystemSpec flipped = SystemSpec::linear(3, Matrix::from_rows({{0.4, 0.0}, {0.0, 1.0}}));
  EXPECT_EQ(construct_periodic_seed(flipped).history.front(), (Vec{0.0, 1.0}));

  const SystemSpec small = SystemSpec::linear(2, Matrix::from_rows({{0.3, 0.2}, {0.2, 0.3}}));
  EXPECT_EQ(code_of([&] { construct_periodic_seed(small); }), ErrorCode::kSpectralRadius);
}

TEST(PeriodicSeed, NonSymmetricNonPositiveRejected) {
  const SystemSpec s = SystemSpec::linear(2, Matrix::from_rows({{1.0, 0.5}, {0.0, 0.5}}));
  EXPECT_EQ(code_of([&] { construct_periodic_seed(s); }), ErrorCode::kWrongMatrixForm);
}

TEST(PeriodicSeed, PropertyPrimePeriodK) {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 2 + trial % 3, k = 2 + trial % 4;
    const SystemSpec s = gen::with_random_denominators(rng, k, gen::positive_with_rho(rng, m, 1.0));
    const InitialConditions seed = construct_periodic_seed(s);
    expect_single_leading(seed, k);
    const auto run = simulate(s, seed, 10000);
    EXPECT_LE(max_shift(run.trajectory, k), 1e-12) << "trial " << trial;
    double weakest = INFINITY;
    for (int d = 1; d < k; ++d) weakest = std::min(weakest, max_shift(run.trajectory, d));
    EXPECT_GT(weakest, 0.1) << "trial " << trial;
  }
}

TEST(Period2kSeed, Examples) {
  const SystemSpec s = case3(2, 1.0, {1.0, 0.5});
  const InitialConditions seed = construct_period2k_seed(s, 1.0, 0.0);
  expect_single_leading(seed, 2);
  const auto run = simulate(s, seed, 12);
  EXPECT_EQ(Vec(run.trajectory[1].begin(), run.trajectory[1].end()), (Vec{0.0, 1.0}));
  EXPECT_EQ(Vec(run.trajectory[3].begin(), run.trajectory[3].end()), (Vec{1.0, 0.0}));
  EXPECT_EQ(max_shift(run.trajectory, 4), 0.0);

  const SystemSpec g2 = case3(2, 2.0, {0.0});
  EXPECT_EQ(code_of([&] { construct_period2k_seed(g2, 2.0, 1.0); }), ErrorCode::kExcludedSeed);
  EXPECT_EQ(code_of([&] { construct_period2k_seed(s, 1.0, 1.0); }), ErrorCode::kExcludedSeed);
  EXPECT_EQ(code_of([&] { construct_period2k_seed(s, -1.0, 0.0); }), ErrorCode::kInvalidArgument);
  const SystemSpec sym = SystemSpec::linear(2, Matrix::from_rows({{0.5, 0.5}, {0.5, 0.5}}));
  EXPECT_EQ(code_of([&] { construct_period2k_seed(sym, 1.0, 0.0); }), ErrorCode::kWrongMatrixForm);
}

TEST(Period2kSeed, PropertyPeriod2kNotK) {
  Rng rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const int k = 2 + trial % 4;
    const double gamma = rng.uniform(0.25, 4.0);
    const SystemSpec s = case3(k, gamma, {rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(0, 1)});
    const double a = rng.uniform(0, 5), b = rng.uniform(0, 5);
    if (std::abs(a - gamma * b) < 0.5) continue;
    const auto run = simulate(s, construct_period2k_seed(s, a, b), 10000);
    EXPECT_LE(max_shift(run.trajectory, 2 * k), 1e-12) << trial;
    EXPECT_GT(max_shift(run.trajectory, k), 0.1) << trial;
  }
}

TEST(UnboundedSeed, Examples) {
  const SystemSpec ones = SystemSpec::linear(2, Matrix::from_rows({{1.0, 1.0}, {1.0, 1.0}}));
  EXPECT_EQ(construct_unbounded_seed(ones).history.front(), (Vec{1.0, 2.0}));
  const SystemSpec diag = SystemSpec::linear(2, Matrix::from_rows({{2.0, 0.0}, {0.0, 3.0}}));
  EXPECT_EQ(construct_unbounded_seed(diag).history.front(), (Vec{1.0, 1.0}));
}

TEST(UnboundedSeed, Preconditions) {
  const SystemSpec small = SystemSpec::linear(2, Matrix::identity(2));
  EXPECT_EQ(code_of([&] { construct_unbounded_seed(small); }), ErrorCode::kSpectralRadius);
  const SystemSpec nonsym = SystemSpec::linear(2, Matrix::from_rows({{2.0, 1.0}, {0.0, 2.0}}));
  EXPECT_EQ(code_of([&] { construct_unbounded_seed(nonsym); }), ErrorCode::kNotSymmetric);
}

TEST(UnboundedSeed, PropertyGrowthWithinBound) {
  Rng rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = 1 + trial % 4, k = 2 + trial % 3;
    const double rho = rng.uniform(1.05, 3.0);
    const SystemSpec s = gen::with_random_denominators(rng, k, gen::symmetric_nonneg_with_rho(rng, m, rho));
    const InitialConditions seed = construct_unbounded_seed(s);
    expect_single_leading(seed, k);
    const long bound =
        static_cast<long>(std::ceil(k * std::log(1e6 / norm2(seed.history.front())) / std::log(rho))) + k;
    const auto run = simulate(s, seed, bound);
    EXPECT_TRUE(detect_unbounded(run.trajectory, 1e6, run.diverged).has_value()) << "trial " << trial;
  }
}
