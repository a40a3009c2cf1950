#pragma once

#include <cmath>
#include <span>

#include "ratsys/model.hpp"

namespace ratsys::detail {

// v_{n,i} = (sum_j a_ij v_{n-k,j}) / (1 + sum_{d=1}^{k-1} q_id . v_{n-d}).
// `prev(d)` yields v_{n-d}. Accumulation order is fixed (left to right, the
// denominator adding one dot product per delay) and is part of the contract:
// the scalar oracle in the tests reproduces it to the last bit.
template <class Prev>
bool rational_step(const SystemSpec& s, Prev&& prev, std::span<double> out) {
  const std::size_t m = static_cast<std::size_t>(s.m);
  const std::span<const double> lag = prev(s.k);
  bool finite = true;
  for (std::size_t i = 0; i < m; ++i) {
    double num = 0.0;
    for (std::size_t j = 0; j < m; ++j) num += s.A(i, j) * lag[j];
    double den = 1.0;
    for (int d = 1; d < s.k; ++d) {
      const std::span<const double> q = s.q(static_cast<int>(i), d);
      const std::span<const double> v = prev(d);
      double qv = 0.0;
      for (std::size_t l = 0; l < m; ++l) qv += q[l] * v[l];
      den += qv;
    }
    out[i] = num / den;
    finite = finite && std::isfinite(out[i]);
  }
  return finite;
}

}  // namespace ratsys::detail
