#include "ratsys/config.hpp"

#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "ratsys/constructors.hpp"
#include "ratsys/errors.hpp"
#include "ratsys/rng.hpp"

namespace ratsys {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw Error(ErrorCode::kConfig, "config field '" + field + "': " + msg);
}

double get_number(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(field, "must be finite");
  return x;
}

long get_integer(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<long>();
}

Vec get_vector(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of numbers");
  Vec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(get_number(j[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

Vec get_vector_of_size(const json& j, const std::string& field, std::size_t n, const char* what) {
  Vec v = get_vector(j, field);
  if (v.size() != n)
    fail(field, "has " + std::to_string(v.size()) + " entries, expected " + what + " = " + std::to_string(n));
  return v;
}

std::vector<double> get_grid(const json& j, const std::string& field) {
  if (j.is_array()) return get_vector(j, field);
  if (!j.is_object()) fail(field, "expected an array or {start, stop, step}");
  for (const char* key : {"start", "stop", "step"})
    if (!j.contains(key)) fail(field + "." + key, "missing");
  const double start = get_number(j["start"], field + ".start");
  const double stop = get_number(j["stop"], field + ".stop");
  const double step = get_number(j["step"], field + ".step");
  if (!(step > 0.0)) fail(field + ".step", "must be positive");
  std::vector<double> out;
  for (long i = 0;; ++i) {
    const double c = start + static_cast<double>(i) * step;
    if (c > stop + 1e-9 * step) break;
    out.push_back(c);
    if (out.size() > 1000000) fail(field, "grid has more than 10^6 cells");
  }
  return out;
}

SeedDirective parse_seed(const std::string& s) {
  SeedDirective d;
  if (s == "explicit") return d;
  if (s == "random") {
    d.kind = SeedDirective::Kind::kRandom;
    return d;
  }
  if (s == "periodic") {
    d.kind = SeedDirective::Kind::kPeriodic;
    return d;
  }
  if (s == "unbounded") {
    d.kind = SeedDirective::Kind::kUnbounded;
    return d;
  }
  static const std::regex p2k(R"(\s*period2k\s*\(\s*([^,\s]+)\s*,\s*([^)\s]+)\s*\)\s*)");
  std::smatch m;
  if (std::regex_match(s, m, p2k)) {
    try {
      std::size_t used_a = 0, used_b = 0;
      d.a = std::stod(m[1].str(), &used_a);
      d.b = std::stod(m[2].str(), &used_b);
      if (used_a != m[1].str().size() || used_b != m[2].str().size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      fail("seed", "period2k arguments must be numbers");
    }
    d.kind = SeedDirective::Kind::kPeriod2k;
    return d;
  }
  fail("seed", "expected explicit, random, periodic, unbounded or period2k(a,b); got '" + s + "'");
}

}  // namespace

std::string to_string(Mode m) { return m == Mode::kTetrachotomy ? "tetrachotomy" : "trichotomy"; }

ExperimentConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kConfig, std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::kConfig, "config must be a JSON object");

  ExperimentConfig cfg;
  if (doc.contains("mode")) {
    const auto& j = doc["mode"];
    if (!j.is_string()) fail("mode", "expected a string");
    const auto s = j.get<std::string>();
    if (s == "tetrachotomy")
      cfg.mode = Mode::kTetrachotomy;
    else if (s == "trichotomy")
      cfg.mode = Mode::kTrichotomy;
    else
      fail("mode", "expected tetrachotomy or trichotomy; got '" + s + "'");
  }

  if (!doc.contains("k")) fail("k", "missing");
  const long k = get_integer(doc["k"], "k");
  if (k < 1 || k > 1000000) fail("k", "must be a positive integer");

  if (doc.contains("scalar")) {
    const auto& s = doc["scalar"];
    if (!s.is_object()) fail("scalar", "expected an object");
    if (doc.contains("A")) fail("A", "give either A or scalar, not both");
    if (k < 2) fail("k", "k must be ≥ 2");
    ScalarParams p;
    p.k = static_cast<int>(k);
    const auto num = [&](const char* key) {
      return s.contains(key) ? get_number(s[key], std::string("scalar.") + key) : 0.0;
    };
    const auto list = [&](const char* key) {
      return s.contains(key) ? get_vector_of_size(s[key], std::string("scalar.") + key, k - 1, "k-1")
                             : Vec(static_cast<std::size_t>(k - 1), 0.0);
    };
    p.beta = num("beta");
    p.gamma = num("gamma");
    p.delta = num("delta");
    p.epsilon = num("epsilon");
    p.B = list("B");
    p.C = list("C");
    p.D = list("D");
    p.E = list("E");
    try {
      cfg.spec = from_scalar_params(p);
    } catch (const Error& e) {
      fail("scalar", e.what());
    }
    if (doc.contains("m") && get_integer(doc["m"], "m") != 2) fail("m", "scalar parameters imply m = 2");
  } else {
    if (!doc.contains("A")) fail("A", "missing (give A or scalar)");
    const auto& ja = doc["A"];
    if (!ja.is_array() || ja.empty()) fail("A", "expected a nonempty array of rows");
    const long m = doc.contains("m") ? get_integer(doc["m"], "m") : static_cast<long>(ja.size());
    if (m < 1 || m > 64) fail("m", "must be between 1 and 64");
    if (static_cast<long>(ja.size()) != m)
      fail("A", "has " + std::to_string(ja.size()) + " rows, expected m = " + std::to_string(m));
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < ja.size(); ++i)
      rows.push_back(get_vector_of_size(ja[i], "A[" + std::to_string(i) + "]", static_cast<std::size_t>(m), "m"));
    cfg.spec = SystemSpec::linear(static_cast<int>(k), Matrix::from_rows(rows));
  }

  if (doc.contains("denominators")) {
    if (doc.contains("scalar")) fail("denominators", "give denominators inside scalar (B, C, D, E) instead");
    const auto& jd = doc["denominators"];
    if (!jd.is_array()) fail("denominators", "expected an array of {i, j, q}");
    for (std::size_t t = 0; t < jd.size(); ++t) {
      const std::string field = "denominators[" + std::to_string(t) + "]";
      const auto& e = jd[t];
      if (!e.is_object() || !e.contains("i") || !e.contains("j") || !e.contains("q"))
        fail(field, "expected an object with i, j and q");
      const long i = get_integer(e["i"], field + ".i");
      const long j = get_integer(e["j"], field + ".j");
      if (i < 1 || i > cfg.spec.m) fail(field + ".i", "row index must be in 1..m");
      if (j < 1 || j > k - 1) fail(field + ".j", "delay index must be in 1..k-1");
      const Vec q = get_vector_of_size(e["q"], field + ".q", static_cast<std::size_t>(cfg.spec.m), "m");
      std::copy(q.begin(), q.end(), cfg.spec.q(static_cast<int>(i - 1), static_cast<int>(j)).begin());
    }
  }

  if (doc.contains("seed")) {
    if (!doc["seed"].is_string()) fail("seed", "expected a string");
    cfg.seed = parse_seed(doc["seed"].get<std::string>());
  }
  if (doc.contains("initial")) {
    const auto& ji = doc["initial"];
    if (!ji.is_array()) fail("initial", "expected an array of k vectors");
    if (static_cast<long>(ji.size()) != k)
      fail("initial", "has " + std::to_string(ji.size()) + " vectors, expected k = " + std::to_string(k));
    InitialConditions init;
    for (std::size_t t = 0; t < ji.size(); ++t)
      init.history.push_back(get_vector_of_size(ji[t], "initial[" + std::to_string(t) + "]",
                                                static_cast<std::size_t>(cfg.spec.m), "m"));
    cfg.initial = std::move(init);
  }

  if (doc.contains("horizon")) {
    cfg.horizon = get_integer(doc["horizon"], "horizon");
    if (cfg.horizon < 1) fail("horizon", "must be at least 1");
  }
  if (doc.contains("rng_seed")) {
    const auto& j = doc["rng_seed"];
    if (!j.is_number_unsigned()) fail("rng_seed", "expected a nonnegative integer");
    cfg.rng_seed = j.get<std::uint64_t>();
  }
  if (doc.contains("init_max")) {
    cfg.init_max = get_number(doc["init_max"], "init_max");
    if (!(cfg.init_max > 0.0)) fail("init_max", "must be positive");
  }
  if (doc.contains("trials")) {
    const long t = get_integer(doc["trials"], "trials");
    if (t < 0 || t > 1000000) fail("trials", "must be between 0 and 10^6");
    cfg.trials = static_cast<int>(t);
  }
  if (doc.contains("tolerances")) {
    const auto& jt = doc["tolerances"];
    if (!jt.is_object()) fail("tolerances", "expected an object");
    auto& t = cfg.tolerances;
    const auto positive = [&](const char* key, double& slot) {
      if (!jt.contains(key)) return;
      slot = get_number(jt[key], std::string("tolerances.") + key);
      if (!(slot > 0.0)) fail(std::string("tolerances.") + key, "must be positive");
    };
    positive("zero_tol", t.zero_tol);
    positive("per_tol", t.per_tol);
    positive("growth_threshold", t.growth_threshold);
    positive("tail_fraction", t.tail_fraction);
    if (t.tail_fraction > 1.0) fail("tolerances.tail_fraction", "must be at most 1");
    if (jt.contains("max_period")) {
      const long p = get_integer(jt["max_period"], "tolerances.max_period");
      if (p < 0 || p > 100000) fail("tolerances.max_period", "must be between 0 and 10^5");
      t.max_period = static_cast<int>(p);
    }
  }
  if (doc.contains("expect")) {
    if (!doc["expect"].is_string()) fail("expect", "expected a regime name");
    cfg.expect = regime_from_string(doc["expect"].get<std::string>());
    if (!cfg.expect) fail("expect", "expected ConvergesToZero, PeriodK, Period2K or UnboundedExists");
  }
  if (doc.contains("sweep")) {
    const auto& js = doc["sweep"];
    if (!js.is_object()) fail("sweep", "expected an object");
    if (!js.contains("c")) fail("sweep.c", "missing");
    SweepGrid grid;
    grid.c = get_grid(js["c"], "sweep.c");
    if (js.contains("denominator_scale")) grid.denom_scale = get_grid(js["denominator_scale"], "sweep.denominator_scale");
    for (double s : grid.denom_scale)
      if (s < 0.0) fail("sweep.denominator_scale", "entries must be nonnegative");
    cfg.sweep = std::move(grid);
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading config file '" + path + "'");
  return parse_config(buf.str());
}

InitialConditions resolve_initial_conditions(const ExperimentConfig& cfg) {
  switch (cfg.seed.kind) {
    case SeedDirective::Kind::kExplicit:
      if (!cfg.initial) fail("initial", "missing (required when seed = explicit)");
      return *cfg.initial;
    case SeedDirective::Kind::kRandom: {
      Rng rng(cfg.rng_seed);
      return random_initial_conditions(rng, cfg.spec.k, cfg.spec.m, cfg.init_max);
    }
    case SeedDirective::Kind::kPeriodic: return construct_periodic_seed(cfg.spec);
    case SeedDirective::Kind::kPeriod2k: return construct_period2k_seed(cfg.spec, cfg.seed.a, cfg.seed.b);
    case SeedDirective::Kind::kUnbounded: return construct_unbounded_seed(cfg.spec);
  }
  fail("seed", "unknown directive");
}

Classification classify(Mode mode, const SystemSpec& spec) {
  return mode == Mode::kTetrachotomy ? classify_tetrachotomy(spec) : classify_trichotomy(spec);
}

Classification classify(const ExperimentConfig& cfg) {
  if (!cfg.mode) fail("mode", "missing (tetrachotomy or trichotomy)");
  return classify(*cfg.mode, cfg.spec);
}

}  // namespace ratsys
