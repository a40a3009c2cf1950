#pragma once

// Regime prediction from the spectrum of A, plus an empirical loop that runs
// the prediction against simulated solutions.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ratsys/analysis.hpp"
#include "ratsys/linalg.hpp"
#include "ratsys/model.hpp"

namespace ratsys {

enum class Regime { kConvergesToZero, kPeriodK, kPeriod2K, kUnboundedExists };

/// Which result justified the regime: trichotomy cases (positive symmetric A,
/// any m) or tetrachotomy cases (2x2).
enum class TheoremPath { kT3_i, kT3_ii, kT3_iii, kT4_I, kT4_II, kT4_III, kT4_IV };

struct Classification {
  Regime regime = Regime::kConvergesToZero;
  TheoremPath path = TheoremPath::kT4_I;
  /// For the nonsymmetric [[0, g], [1/g, 0]] form the eigenvectors are unit but
  /// not orthogonal.
  EigenDecomposition spectrum;
  bool minus_one_eigenvalue = false;
  /// Trichotomy with rho > 1 additionally predicts every component of the
  /// witness solution is unbounded.
  bool componentwise_unbounded = false;
  std::optional<InitialConditions> witness;
};

std::string to_string(Regime r);
std::string to_string(TheoremPath p);
std::optional<Regime> regime_from_string(const std::string& s);

/// 2x2 systems with symmetric A, or A = [[0, gamma], [1/gamma, 0]].
/// Throws kBoundaryAmbiguous when rho is within rho_tol of 1 but the
/// eigenpairs are too inaccurate to decide whether -1 is an eigenvalue.
Classification classify_tetrachotomy(const SystemSpec& spec);

/// Symmetric A with strictly positive entries, any m.
Classification classify_trichotomy(const SystemSpec& spec);

struct VerifyOptions {
  long horizon = 10000;
  int trials = 20;
  std::uint64_t rng_seed = 1;
  double init_max = 10.0;
  AnalysisTolerances tolerances;
  Execution exec = Execution::kParallel;
};

struct PredictionCheck {
  std::string name;
  bool passed = false;
  std::string detail;
  /// First offending initial condition, when a check over many runs failed.
  std::optional<InitialConditions> counterexample;
};

struct RunSummary {
  Behavior behavior = Behavior::kUndetermined;
  std::optional<int> period;
  std::optional<long> exit_step;
};

struct VerificationReport {
  Regime regime = Regime::kConvergesToZero;
  std::vector<PredictionCheck> checks;
  std::vector<RunSummary> trials;  // input order
  std::optional<RunSummary> witness;

  bool all_passed() const;
};

/// Runs `trials` random initial conditions (uniform on [0, init_max]^m) plus
/// the witness, and checks each observation against cls.regime:
///   ConvergesToZero  every run converges to zero;
///   PeriodK          every run periodic with period dividing k, witness prime period k;
///   Period2K         every run periodic with period dividing 2k, witness prime period 2k;
///   UnboundedExists  witness unbounded (random runs are reported, not gated).
/// Trials may run concurrently; results are merged in input order.
VerificationReport verify_classification(const SystemSpec& spec, const Classification& cls,
                                         const VerifyOptions& opts = {});

}  // namespace ratsys
