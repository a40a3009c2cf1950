#include "ratsys/model.hpp"

#include <cmath>
#include <sstream>

#include "ratsys/errors.hpp"

namespace ratsys {

SystemSpec SystemSpec::linear(int k, Matrix a) {
  SystemSpec s;
  s.k = k;
  s.m = static_cast<int>(a.dim());
  s.A = std::move(a);
  if (k >= 1) s.denom.assign(static_cast<std::size_t>(s.m) * (k - 1) * s.m, 0.0);
  return s;
}

namespace {

void require_nonnegative(double x, const char* name) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw Error(ErrorCode::kInvalidArgument, std::string("parameter ") + name + " must be nonnegative and finite");
}

}  // namespace

SystemSpec from_scalar_params(const ScalarParams& p) {
  if (p.k < 2) throw Error(ErrorCode::kInvalidArgument, "k must be ≥ 2");
  const auto delays = static_cast<std::size_t>(p.k - 1);
  const std::pair<const Vec*, const char*> lists[] = {{&p.B, "B"}, {&p.C, "C"}, {&p.D, "D"}, {&p.E, "E"}};
  for (const auto& [list, name] : lists) {
    if (list->size() != delays)
      throw Error(ErrorCode::kInvalidArgument, std::string("parameter list ") + name + " must have k-1 entries");
    for (double x : *list) require_nonnegative(x, name);
  }
  require_nonnegative(p.beta, "beta");
  require_nonnegative(p.gamma, "gamma");
  require_nonnegative(p.delta, "delta");
  require_nonnegative(p.epsilon, "epsilon");

  SystemSpec s = SystemSpec::linear(p.k, Matrix::from_rows({{p.beta, p.gamma}, {p.delta, p.epsilon}}));
  for (int j = 1; j < p.k; ++j) {
    auto a = s.q(0, j);
    a[0] = p.B[j - 1];
    a[1] = p.C[j - 1];
    auto q = s.q(1, j);
    q[0] = p.D[j - 1];
    q[1] = p.E[j - 1];
  }
  return s;
}

std::vector<std::string> validate(const SystemSpec& spec) {
  std::vector<std::string> out;
  if (spec.k < 2) out.emplace_back("k must be ≥ 2");
  if (spec.m < 1) out.emplace_back("m must be ≥ 1");
  if (spec.m >= 1 && spec.A.dim() != static_cast<std::size_t>(spec.m))
    out.emplace_back("A must be m×m (got " + std::to_string(spec.A.dim()) + "×" +
                     std::to_string(spec.A.dim()) + ", m = " + std::to_string(spec.m) + ")");
  if (!spec.A.finite())
    out.emplace_back("A must be finite");
  else if (!spec.A.nonnegative())
    out.emplace_back("A must be nonnegative");

  if (spec.k >= 1 && spec.m >= 1) {
    const std::size_t expected = static_cast<std::size_t>(spec.m) * (spec.k - 1) * spec.m;
    if (spec.denom.size() != expected) {
      out.emplace_back("denom must hold m·(k−1) vectors of length m (expected " + std::to_string(expected) +
                       " coefficients, got " + std::to_string(spec.denom.size()) + ")");
      return out;
    }
  }
  for (double x : spec.denom) {
    if (!std::isfinite(x)) {
      out.emplace_back("denom coefficients must be finite");
      break;
    }
    if (x < 0.0) {
      out.emplace_back("denom coefficients must be nonnegative");
      break;
    }
  }
  return out;
}

void require_valid(const SystemSpec& spec) {
  const auto problems = validate(spec);
  if (problems.empty()) return;
  std::ostringstream msg;
  msg << "invalid system spec: ";
  for (std::size_t i = 0; i < problems.size(); ++i) msg << (i ? "; " : "") << problems[i];
  throw Error(ErrorCode::kInvalidSpec, msg.str());
}

std::vector<std::string> validate(const InitialConditions& init, const SystemSpec& spec) {
  std::vector<std::string> out;
  if (init.history.size() != static_cast<std::size_t>(spec.k)) {
    out.emplace_back("initial conditions must hold exactly k = " + std::to_string(spec.k) + " vectors (got " +
                     std::to_string(init.history.size()) + ")");
    return out;
  }
  for (std::size_t t = 0; t < init.history.size(); ++t) {
    const long n = 1 - spec.k + static_cast<long>(t);
    const Vec& v = init.history[t];
    if (v.size() != static_cast<std::size_t>(spec.m)) {
      out.emplace_back("initial vector v[" + std::to_string(n) + "] must have dimension m = " +
                       std::to_string(spec.m));
      continue;
    }
    for (double x : v) {
      if (!std::isfinite(x) || x < 0.0) {
        out.emplace_back("initial vector v[" + std::to_string(n) + "] must be nonnegative and finite");
        break;
      }
    }
  }
  return out;
}

Trajectory::Trajectory(SystemSpec spec, const InitialConditions& init, long horizon)
    : spec_(std::move(spec)), horizon_(horizon) {
  const auto problems = validate(init, spec_);
  if (!problems.empty()) throw Error(ErrorCode::kInvalidInitialConditions, problems.front());
  data_.reserve(static_cast<std::size_t>(horizon + spec_.k) * stride());
  for (const Vec& v : init.history) data_.insert(data_.end(), v.begin(), v.end());
}

void Trajectory::append(std::span<const double> v) { data_.insert(data_.end(), v.begin(), v.end()); }

}  // namespace ratsys
