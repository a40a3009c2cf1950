#pragma once

// Experiment configuration: one JSON document fully determines a run.
//
//   {
//     "mode": "tetrachotomy" | "trichotomy",        (classify/verify/sweep)
//     "k": 2, "m": 2,
//     "A": [[0.5, 0.5], [0.5, 0.5]],                 (or "scalar": {...}, m = 2)
//     "denominators": [{"i": 1, "j": 1, "q": [1.0, 0.0]}],   (1-based row i, delay j)
//     "seed": "explicit" | "random" | "periodic" | "unbounded" | "period2k(a,b)",
//     "initial": [[...], ...],                       (seed = explicit: v_{1-k}..v_0)
//     "horizon": 1000, "rng_seed": 7, "init_max": 10, "trials": 20,
//     "tolerances": {"zero_tol": 1e-8, "per_tol": 1e-7, "growth_threshold": 1e6,
//                    "tail_fraction": 0.2, "max_period": 0},
//     "expect": "PeriodK",                           (optional, verify only)
//     "sweep": {"c": [0.5, 1.0, 1.5] | {"start": .., "stop": .., "step": ..},
//               "denominator_scale": [1.0]}
//   }

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ratsys/analysis.hpp"
#include "ratsys/classifier.hpp"
#include "ratsys/model.hpp"

namespace ratsys {

/// Unreadable input or unwritable output.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { kTetrachotomy, kTrichotomy };

struct SeedDirective {
  enum class Kind { kExplicit, kRandom, kPeriodic, kPeriod2k, kUnbounded };
  Kind kind = Kind::kExplicit;
  double a = 0.0, b = 0.0;  // period2k(a, b)
};

struct SweepGrid {
  std::vector<double> c;
  std::vector<double> denom_scale{1.0};
};

struct ExperimentConfig {
  std::optional<Mode> mode;
  SystemSpec spec;
  SeedDirective seed;
  std::optional<InitialConditions> initial;
  long horizon = 1000;
  AnalysisTolerances tolerances;
  std::uint64_t rng_seed = 0;
  double init_max = 10.0;
  int trials = 20;
  std::optional<Regime> expect;
  std::optional<SweepGrid> sweep;
};

/// Throws Error(kConfig) with a message naming the offending field. The spec
/// itself is not validated here (k = 1 parses); callers run validate().
ExperimentConfig parse_config(const std::string& text);
/// Throws IoError when the file cannot be read.
ExperimentConfig load_config(const std::string& path);

/// Initial conditions for the configured seed directive.
InitialConditions resolve_initial_conditions(const ExperimentConfig& cfg);

/// Dispatches on cfg.mode (kConfig error when absent).
Classification classify(const ExperimentConfig& cfg);
Classification classify(Mode mode, const SystemSpec& spec);

std::string to_string(Mode m);

}  // namespace ratsys
