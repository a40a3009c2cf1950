#include "ratsys/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ratsys/constructors.hpp"
#include "ratsys/errors.hpp"
#include "ratsys/rng.hpp"
#include "ratsys/simulator.hpp"

namespace ratsys {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::kConvergesToZero: return "ConvergesToZero";
    case Regime::kPeriodK: return "PeriodK";
    case Regime::kPeriod2K: return "Period2K";
    case Regime::kUnboundedExists: return "UnboundedExists";
  }
  return "?";
}

std::string to_string(TheoremPath p) {
  switch (p) {
    case TheoremPath::kT3_i: return "T3-i";
    case TheoremPath::kT3_ii: return "T3-ii";
    case TheoremPath::kT3_iii: return "T3-iii";
    case TheoremPath::kT4_I: return "T4-I";
    case TheoremPath::kT4_II: return "T4-II";
    case TheoremPath::kT4_III: return "T4-III";
    case TheoremPath::kT4_IV: return "T4-IV";
  }
  return "?";
}

std::optional<Regime> regime_from_string(const std::string& s) {
  for (Regime r : {Regime::kConvergesToZero, Regime::kPeriodK, Regime::kPeriod2K, Regime::kUnboundedExists})
    if (to_string(r) == s) return r;
  return std::nullopt;
}

namespace {

// Spectrum of [[0, g], [d, 0]] with g * d ~ 1: lambda = +-sqrt(g d), with
// eigenvector (g, lambda) for each.
EigenDecomposition period2k_spectrum(const Matrix& a) {
  const double g = a(0, 1);
  const double s = std::sqrt(a(0, 1) * a(1, 0));
  EigenDecomposition eig;
  eig.eigenvalues = {s, -s};
  for (double lambda : eig.eigenvalues) {
    Vec w{g, lambda};
    const double n = norm2(w);
    for (double& x : w) x /= n;
    if (std::abs(w[1]) > std::abs(w[0]) + 1e-12 ? w[1] < 0.0 : w[0] < 0.0)
      for (double& x : w) x = -x;
    eig.eigenvectors.push_back(std::move(w));
  }
  eig.spectral_radius = s;
  return eig;
}

double max_eigen_residual(const Matrix& a, const EigenDecomposition& eig) {
  double worst = 0.0;
  for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i) {
    const Vec aw = a * eig.eigenvectors[i];
    for (std::size_t j = 0; j < aw.size(); ++j)
      worst = std::max(worst, std::abs(aw[j] - eig.eigenvalues[i] * eig.eigenvectors[i][j]));
  }
  return worst;
}

}  // namespace

Classification classify_tetrachotomy(const SystemSpec& spec) {
  require_valid(spec);
  if (spec.m != 2) throw Error(ErrorCode::kDimensionMismatch, "tetrachotomy requires m = 2");
  const Matrix& a = spec.A;
  Classification c;
  if (a.symmetric()) {
    c.spectrum = eig_symmetric(a);
  } else if (is_period2k_form(a)) {
    c.spectrum = period2k_spectrum(a);
  } else {
    throw Error(ErrorCode::kWrongMatrixForm,
                "tetrachotomy requires a symmetric A or A = [[0, gamma], [1/gamma, 0]]");
  }

  const double rho = c.spectrum.spectral_radius;
  c.minus_one_eigenvalue = std::any_of(c.spectrum.eigenvalues.begin(), c.spectrum.eigenvalues.end(),
                                       [](double l) { return std::abs(l + 1.0) <= kRhoTol; });
  if (rho < 1.0 - kRhoTol) {
    c.regime = Regime::kConvergesToZero;
    c.path = TheoremPath::kT4_I;
  } else if (rho > 1.0 + kRhoTol) {
    c.regime = Regime::kUnboundedExists;
    c.path = TheoremPath::kT4_IV;
    c.witness = construct_unbounded_seed(spec);
  } else {
    if (max_eigen_residual(a, c.spectrum) > kRhoTol)
      throw Error(ErrorCode::kBoundaryAmbiguous,
                  "spectral radius is within rho_tol of 1 but the eigenpairs are too inaccurate to decide "
                  "whether -1 is an eigenvalue");
    if (c.minus_one_eigenvalue) {
      c.regime = Regime::kPeriod2K;
      c.path = TheoremPath::kT4_III;
      c.witness = construct_period2k_seed(spec, 1.0, 0.0);
    } else {
      c.regime = Regime::kPeriodK;
      c.path = TheoremPath::kT4_II;
      c.witness = construct_periodic_seed(spec);
    }
  }
  return c;
}

Classification classify_trichotomy(const SystemSpec& spec) {
  require_valid(spec);
  const Matrix& a = spec.A;
  if (!a.symmetric()) throw Error(ErrorCode::kNotSymmetric, "trichotomy requires a symmetric matrix");
  if (!a.positive()) throw Error(ErrorCode::kNotPositive, "trichotomy requires strictly positive entries");
  Classification c;
  c.spectrum = eig_symmetric(a);
  c.minus_one_eigenvalue = std::any_of(c.spectrum.eigenvalues.begin(), c.spectrum.eigenvalues.end(),
                                       [](double l) { return std::abs(l + 1.0) <= kRhoTol; });
  const double rho = c.spectrum.spectral_radius;
  if (rho < 1.0 - kRhoTol) {
    c.regime = Regime::kConvergesToZero;
    c.path = TheoremPath::kT3_i;
  } else if (rho > 1.0 + kRhoTol) {
    c.regime = Regime::kUnboundedExists;
    c.path = TheoremPath::kT3_iii;
    c.componentwise_unbounded = true;
    c.witness = construct_unbounded_seed(spec);
  } else {
    c.regime = Regime::kPeriodK;
    c.path = TheoremPath::kT3_ii;
    c.witness = construct_periodic_seed(spec);
  }
  return c;
}

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const PredictionCheck& c) { return c.passed; });
}

namespace {

RunSummary summarize(const AnalysisReport& r) { return {r.behavior, r.period, r.exit_step}; }

std::string describe(const RunSummary& s) {
  std::ostringstream out;
  out << to_string(s.behavior);
  if (s.period) out << "(p=" << *s.period << ")";
  if (s.exit_step) out << "(n=" << *s.exit_step << ")";
  return out.str();
}

struct Observed {
  RunSummary summary;
  std::vector<double> component_max;
};

Observed observe(const SystemSpec& spec, const InitialConditions& init, const VerifyOptions& opts) {
  const SimulationResult run = simulate(spec, init, opts.horizon);
  Observed o{summarize(analyze(run, opts.tolerances)), Vec(static_cast<std::size_t>(spec.m), 0.0)};
  for (long n = 1; n <= run.trajectory.last(); ++n)
    for (std::size_t i = 0; i < o.component_max.size(); ++i)
      o.component_max[i] = std::max(o.component_max[i], run.trajectory[n][i]);
  return o;
}

template <class Pred>
PredictionCheck all_runs(const std::string& name, const std::vector<InitialConditions>& inits,
                         const std::vector<RunSummary>& runs, Pred&& ok) {
  PredictionCheck check{name, true, "", std::nullopt};
  std::size_t passed = 0;
  for (std::size_t t = 0; t < runs.size(); ++t) {
    if (ok(runs[t])) {
      ++passed;
    } else if (check.passed) {
      check.passed = false;
      check.counterexample = inits[t];
      check.detail = "trial " + std::to_string(t) + " observed " + describe(runs[t]) + "; ";
    }
  }
  check.detail += std::to_string(passed) + "/" + std::to_string(runs.size()) + " runs as predicted";
  return check;
}

PredictionCheck witness_period(const std::optional<RunSummary>& w, int expected) {
  PredictionCheck check{"witness has prime period " + std::to_string(expected), false, "no witness", std::nullopt};
  if (!w) return check;
  check.passed = w->behavior == Behavior::kEventuallyPeriodic && w->period == expected;
  check.detail = "observed " + describe(*w);
  return check;
}

}  // namespace

VerificationReport verify_classification(const SystemSpec& spec, const Classification& cls,
                                         const VerifyOptions& opts) {
  require_valid(spec);
  VerificationReport report;
  report.regime = cls.regime;

  Rng rng(opts.rng_seed);
  std::vector<InitialConditions> inits;
  for (int t = 0; t < opts.trials; ++t) inits.push_back(random_initial_conditions(rng, spec.k, spec.m, opts.init_max));

  std::vector<RunSummary> runs(inits.size());
  const long count = static_cast<long>(inits.size());
  if (opts.exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (long t = 0; t < count; ++t) runs[t] = observe(spec, inits[t], opts).summary;
  } else {
    for (long t = 0; t < count; ++t) runs[t] = observe(spec, inits[t], opts).summary;
  }
  report.trials = runs;

  std::optional<Observed> witness;
  if (cls.witness) {
    witness = observe(spec, *cls.witness, opts);
    report.witness = witness->summary;
  }

  const int k = spec.k;
  const auto periodic_dividing = [](int base) {
    return [base](const RunSummary& s) {
      return s.behavior == Behavior::kEventuallyPeriodic && s.period && base % *s.period == 0;
    };
  };

  switch (cls.regime) {
    case Regime::kConvergesToZero:
      report.checks.push_back(all_runs("random runs converge to zero", inits, runs, [](const RunSummary& s) {
        return s.behavior == Behavior::kConvergedToZero;
      }));
      break;
    case Regime::kPeriodK:
      report.checks.push_back(
          all_runs("random runs periodic with period dividing k", inits, runs, periodic_dividing(k)));
      report.checks.push_back(witness_period(report.witness, k));
      break;
    case Regime::kPeriod2K:
      report.checks.push_back(
          all_runs("random runs periodic with period dividing 2k", inits, runs, periodic_dividing(2 * k)));
      report.checks.push_back(witness_period(report.witness, 2 * k));
      break;
    case Regime::kUnboundedExists: {
      PredictionCheck w{"witness solution unbounded", false, "no witness", std::nullopt};
      if (witness) {
        w.passed = witness->summary.behavior == Behavior::kUnbounded;
        w.detail = "observed " + describe(witness->summary);
      }
      report.checks.push_back(w);
      if (cls.componentwise_unbounded) {
        PredictionCheck c{"witness unbounded in every component", false, "no witness", std::nullopt};
        if (witness) {
          const double smallest = *std::min_element(witness->component_max.begin(), witness->component_max.end());
          c.passed = smallest > opts.tolerances.growth_threshold;
          std::ostringstream d;
          d << "smallest component maximum " << smallest;
          c.detail = d.str();
        }
        report.checks.push_back(c);
      }
      PredictionCheck info = all_runs("random runs (informational)", inits, runs, [](const RunSummary& s) {
        return s.behavior == Behavior::kUnbounded;
      });
      info.passed = true;
      info.counterexample.reset();
      report.checks.push_back(info);
      break;
    }
  }
  return report;
}

}  // namespace ratsys
