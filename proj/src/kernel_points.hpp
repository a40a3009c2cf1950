#pragma once

// Per-index bodies shared by the serial and OpenMP kernel loops.

#include <cmath>
#include <cstddef>
#include <span>

#include "ratsys/kernels.hpp"
#include "ratsys/model.hpp"

namespace ratsys::detail {

inline double apply_row(const Matrix& a, std::size_t i, std::span<const double> v) {
  double s = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) s += a(i, j) * v[j];
  return s;
}

inline double h_of_product(const Matrix& a, std::span<const double> v) {
  double h = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = apply_row(a, i, v);
    h += x * x;
  }
  return h;
}

inline double h_of(std::span<const double> v) {
  double h = 0.0;
  for (double x : v) h += x * x;
  return h;
}

inline double residual_linear_at(const Trajectory& t, const Matrix& a, long n) {
  const auto v = t[n];
  const auto lag = t[n - t.k()];
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = v[i] - apply_row(a, i, lag);
    s += d * d;
  }
  return std::sqrt(s);
}

inline double residual_shift_at(const Trajectory& t, long shift, long n) {
  const auto v = t[n];
  const auto w = t[n - shift];
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = v[i] - w[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline bool envelope_holds_at(const Trajectory& t, const Matrix& a, long n) {
  const auto v = t[n];
  const auto lag = t[n - t.k()];
  const double h_av = h_of_product(a, v);
  const double h_v = h_of(v);
  const double h_alag = h_of_product(a, lag);
  const double h_lag = h_of(lag);
  return leq_with_slack(h_av, h_v) && leq_with_slack(h_v, h_alag) && leq_with_slack(h_alag, h_lag);
}

inline bool domination_holds_at(const Trajectory& t, const Matrix& aq, const Matrix& aql, long lag, long n) {
  const auto v = t[n];
  const auto w = t[n - lag];
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!leq_with_slack(apply_row(aq, i, v), apply_row(aql, i, w))) return false;
  return true;
}

}  // namespace ratsys::detail
