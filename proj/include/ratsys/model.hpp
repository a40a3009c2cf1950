#pragma once

#include <span>
#include <string>
#include <vector>

#include "ratsys/linalg.hpp"

namespace ratsys {

/// A k-th order system v_n = B_n A v_{n-k} on [0, inf)^m, where B_n is
/// diagonal with b_ii = 1 / (1 + sum_{j=1}^{k-1} q_ij . v_{n-j}).
///
/// Fields are public so that validate() can report on malformed values;
/// simulation entry points call require_valid() first.
struct SystemSpec {
  int k = 2;
  int m = 1;
  Matrix A;
  /// q_ij for row i in [0, m) and delay j in [1, k-1], each an m-vector,
  /// stored contiguously row-major in (i, j).
  std::vector<double> denom;

  /// Spec with all denominator vectors zero, i.e. the linear system.
  static SystemSpec linear(int k, Matrix a);

  std::span<const double> q(int row, int delay) const {
    return {denom.data() + offset(row, delay), static_cast<std::size_t>(m)};
  }
  std::span<double> q(int row, int delay) {
    return {denom.data() + offset(row, delay), static_cast<std::size_t>(m)};
  }

  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;

 private:
  std::size_t offset(int row, int delay) const {
    return (static_cast<std::size_t>(row) * static_cast<std::size_t>(k - 1) +
            static_cast<std::size_t>(delay - 1)) *
           static_cast<std::size_t>(m);
  }
};

/// Parameters of the two scalar equations
///   x_n = (beta x_{n-k} + gamma y_{n-k}) / (1 + sum B_j x_{n-j} + sum C_j y_{n-j})
///   y_n = (delta x_{n-k} + epsilon y_{n-k}) / (1 + sum D_j x_{n-j} + sum E_j y_{n-j})
/// with B, C, D, E indexed by delay j = 1..k-1 (element 0 is j = 1).
struct ScalarParams {
  int k = 2;
  double beta = 0.0, gamma = 0.0, delta = 0.0, epsilon = 0.0;
  Vec B, C, D, E;
};

/// Vector form of the two-equation system: A = [[beta, gamma], [delta, epsilon]],
/// row 0 denominators (B_j, C_j), row 1 denominators (D_j, E_j).
SystemSpec from_scalar_params(const ScalarParams& p);

/// Every violated invariant, one message per offending field. Empty iff valid.
std::vector<std::string> validate(const SystemSpec& spec);
/// Throws kInvalidSpec listing all violations.
void require_valid(const SystemSpec& spec);

/// History v_{1-k}, ..., v_0 in that order.
struct InitialConditions {
  std::vector<Vec> history;

  friend bool operator==(const InitialConditions&, const InitialConditions&) = default;
};

std::vector<std::string> validate(const InitialConditions& init, const SystemSpec& spec);

/// Stored solution indexed by n = 1-k, ..., last(). Initial conditions sit at
/// n <= 0. last() is the horizon unless the run diverged first.
class Trajectory {
 public:
  Trajectory(SystemSpec spec, const InitialConditions& init, long horizon);

  const SystemSpec& spec() const { return spec_; }
  int k() const { return spec_.k; }
  int dim() const { return spec_.m; }
  long first() const { return 1 - spec_.k; }
  long last() const { return first() + static_cast<long>(data_.size() / stride()) - 1; }
  long horizon() const { return horizon_; }
  /// Number of stored vectors.
  std::size_t size() const { return data_.size() / stride(); }

  std::span<const double> operator[](long n) const {
    return {data_.data() + static_cast<std::size_t>(n - first()) * stride(), stride()};
  }
  std::span<const double> values() const { return data_; }

  void append(std::span<const double> v);

 private:
  std::size_t stride() const { return static_cast<std::size_t>(spec_.m); }

  SystemSpec spec_;
  long horizon_;
  std::vector<double> data_;
};

}  // namespace ratsys
