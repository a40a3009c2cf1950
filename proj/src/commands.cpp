#include "ratsys/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "ratsys/classifier.hpp"
#include "ratsys/config.hpp"
#include "ratsys/csv.hpp"
#include "ratsys/errors.hpp"
#include "ratsys/simulator.hpp"

namespace ratsys::cli {

namespace {

// Loads the config and applies command-line overrides; reports and maps
// failures to exit codes through the returned optional.
std::optional<ExperimentConfig> load(const CommandOptions& opts, std::ostream& err, int& code) {
  try {
    ExperimentConfig cfg = load_config(opts.config);
    if (opts.trials) cfg.trials = *opts.trials;
    if (opts.horizon) cfg.horizon = *opts.horizon;
    if (opts.seed) cfg.rng_seed = *opts.seed;
    if (cfg.horizon < 1) throw Error(ErrorCode::kConfig, "horizon must be at least 1");
    if (cfg.trials < 0) throw Error(ErrorCode::kConfig, "trials must be nonnegative");
    const auto problems = validate(cfg.spec);
    if (!problems.empty()) {
      for (const auto& p : problems) err << "validation error: " << p << '\n';
      code = kValidationError;
      return std::nullopt;
    }
    return cfg;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    code = kIoError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    code = kValidationError;
  }
  return std::nullopt;
}

std::string format_vec(std::span<const double> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_double(v[i]);
  return s + ")";
}

std::string format_history(const InitialConditions& init) {
  std::string s;
  const long k = static_cast<long>(init.history.size());
  for (long t = 0; t < k; ++t) s += (t ? ", " : "") + ("v[" + std::to_string(1 - k + t) + "] = ") + format_vec(init.history[t]);
  return s;
}

void print_classification(std::ostream& out, const ExperimentConfig& cfg, const Classification& cls) {
  out << "mode: " << to_string(*cfg.mode) << '\n';
  out << "k: " << cfg.spec.k << '\n';
  out << "m: " << cfg.spec.m << '\n';
  out << "regime: " << to_string(cls.regime) << '\n';
  out << "theorem_path: " << to_string(cls.path) << '\n';
  out << "spectral_radius: " << format_double(cls.spectrum.spectral_radius) << '\n';
  out << "eigenvalues: ";
  for (std::size_t i = 0; i < cls.spectrum.eigenvalues.size(); ++i)
    out << (i ? ", " : "") << format_double(cls.spectrum.eigenvalues[i]);
  out << '\n';
  out << "minus_one_eigenvalue: " << (cls.minus_one_eigenvalue ? "true" : "false") << '\n';
  if (cls.componentwise_unbounded) out << "prediction: every component of the witness solution is unbounded\n";
  if (cls.witness) {
    const long k = static_cast<long>(cls.witness->history.size());
    out << "witness: v[" << 1 - k << "] = " << format_vec(cls.witness->history.front())
        << "; all other history vectors zero\n";
  } else {
    out << "witness: none\n";
  }
}

}  // namespace

int cmd_simulate(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  int code = kOk;
  auto cfg = load(opts, err, code);
  if (!cfg) return code;

  InitialConditions init;
  try {
    init = resolve_initial_conditions(*cfg);
    const auto problems = validate(init, cfg->spec);
    if (!problems.empty()) {
      for (const auto& p : problems) err << "validation error: " << p << '\n';
      return kValidationError;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }

  const SimulationResult run = simulate(cfg->spec, init, cfg->horizon);
  std::ofstream file(opts.out);
  if (!file) {
    err << "error: cannot write '" << opts.out << "'\n";
    return kIoError;
  }
  write_trajectory_csv(file, run.trajectory, run.diverged);
  file.close();
  if (!file) {
    err << "error: failed writing '" << opts.out << "'\n";
    return kIoError;
  }
  if (run.diverged) {
    err << "diverged at n=" << run.diverged->step << "; partial trajectory written to " << opts.out << '\n';
    return kVerificationFailure;
  }
  out << "wrote " << run.trajectory.size() << " rows to " << opts.out << '\n';
  return kOk;
}

int cmd_classify(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  int code = kOk;
  auto cfg = load(opts, err, code);
  if (!cfg) return code;
  try {
    print_classification(out, *cfg, classify(*cfg));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
  return kOk;
}

int cmd_verify(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  int code = kOk;
  auto cfg = load(opts, err, code);
  if (!cfg) return code;

  Classification cls;
  try {
    cls = classify(*cfg);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }

  std::vector<PredictionCheck> extra;
  if (cfg->expect) {
    PredictionCheck c{"classification matches expected regime", cls.regime == *cfg->expect,
                      "expected " + to_string(*cfg->expect) + ", classified " + to_string(cls.regime),
                      std::nullopt};
    extra.push_back(c);
    cls.regime = *cfg->expect;  // verify the stated expectation against simulation
  }

  VerifyOptions vo;
  vo.horizon = cfg->horizon;
  vo.trials = cfg->trials;
  vo.rng_seed = cfg->rng_seed;
  vo.init_max = cfg->init_max;
  vo.tolerances = cfg->tolerances;
  VerificationReport report = verify_classification(cfg->spec, cls, vo);
  report.checks.insert(report.checks.begin(), extra.begin(), extra.end());

  out << "regime: " << to_string(report.regime) << " (" << to_string(cls.path) << ")\n";
  out << "horizon: " << vo.horizon << "  trials: " << vo.trials << "  rng_seed: " << vo.rng_seed << '\n';
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(48) << c.name << c.detail << '\n';
    if (c.counterexample) out << "      counterexample: " << format_history(*c.counterexample) << '\n';
  }
  const bool ok = report.all_passed();
  out << "overall: " << (ok ? "PASS" : "FAIL") << '\n';
  return ok ? kOk : kVerificationFailure;
}

namespace {

struct SweepRow {
  double c = 0.0, scale = 1.0, rho = 0.0;
  std::string regime, path;
  bool verified = false;
  std::optional<int> period;
};

SweepRow sweep_cell(const ExperimentConfig& cfg, double c, double scale) {
  SweepRow row;
  row.c = c;
  row.scale = scale;
  SystemSpec spec = cfg.spec;
  spec.A = spec.A.scaled(c);
  for (double& q : spec.denom) q *= scale;
  try {
    const Classification cls = classify(*cfg.mode, spec);
    row.rho = cls.spectrum.spectral_radius;
    row.regime = to_string(cls.regime);
    row.path = to_string(cls.path);
    VerifyOptions vo;
    vo.horizon = cfg.horizon;
    vo.trials = cfg.trials;
    vo.rng_seed = cfg.rng_seed;
    vo.init_max = cfg.init_max;
    vo.tolerances = cfg.tolerances;
    vo.exec = Execution::kSerial;
    const VerificationReport rep = verify_classification(spec, cls, vo);
    row.verified = rep.all_passed();
    if (rep.witness && rep.witness->period)
      row.period = rep.witness->period;
    else if (!rep.trials.empty() && rep.trials.front().period)
      row.period = rep.trials.front().period;
  } catch (const Error& e) {
    row.regime = "error";
    row.path = e.what();
    for (char& ch : row.path)
      if (ch == ',' || ch == '\n') ch = ';';
  }
  return row;
}

}  // namespace

int cmd_sweep(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  int code = kOk;
  auto cfg = load(opts, err, code);
  if (!cfg) return code;
  if (!cfg->mode) {
    err << "error: config field 'mode': missing (tetrachotomy or trichotomy)\n";
    return kValidationError;
  }
  if (!cfg->sweep) {
    err << "error: config field 'sweep': missing\n";
    return kValidationError;
  }
  if (cfg->sweep->c.empty() || cfg->sweep->denom_scale.empty()) {
    err << "error: config field 'sweep.c': grid is empty\n";
    return kValidationError;
  }

  std::vector<std::pair<double, double>> cells;
  for (double c : cfg->sweep->c)
    for (double s : cfg->sweep->denom_scale) cells.emplace_back(c, s);
  std::vector<SweepRow> rows(cells.size());
  const long count = static_cast<long>(cells.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) rows[i] = sweep_cell(*cfg, cells[i].first, cells[i].second);

  std::error_code ec;
  std::filesystem::create_directories(opts.out, ec);
  const auto path = std::filesystem::path(opts.out) / "phase_table.csv";
  std::ofstream file(path);
  if (ec || !file) {
    err << "error: cannot write '" << path.string() << "'\n";
    return kIoError;
  }
  file << "c,denom_scale,rho,regime,theorem_path,verified,period_observed\n";
  bool all = true;
  for (const auto& r : rows) {
    file << format_double(r.c) << ',' << format_double(r.scale) << ',' << format_double(r.rho) << ',' << r.regime
         << ',' << r.path << ',' << (r.verified ? "true" : "false") << ','
         << (r.period ? std::to_string(*r.period) : "") << '\n';
    all = all && r.verified;
  }
  file.close();
  if (!file) {
    err << "error: failed writing '" << path.string() << "'\n";
    return kIoError;
  }
  out << "wrote " << rows.size() << " rows to " << path.string() << (all ? "" : " (some cells not verified)")
      << '\n';
  return all ? kOk : kVerificationFailure;
}

}  // namespace ratsys::cli
