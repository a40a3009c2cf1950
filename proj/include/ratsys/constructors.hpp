#pragma once

// Special initial conditions. Every seed is zero except v_{1-k}; along that
// residue class the denominators stay at 1 and the system is exactly linear,
// v_{kL+1} = A^{L+1} v_{1-k}.

#include "ratsys/model.hpp"

namespace ratsys {

/// History with v_{1-k} = lead and every other vector zero.
InitialConditions seed_with_leading(int k, Vec lead);

/// beta = epsilon = 0 exactly and |gamma * delta - 1| <= rho_tol.
bool is_period2k_form(const Matrix& a);

/// Seed of a prime-period-k solution: v_{1-k} is a unit nonnegative eigenvector
/// for eigenvalue 1. Positive A uses the Perron vector; other symmetric A use
/// the eigendecomposition (axis vectors for diagonal A).
InitialConditions construct_periodic_seed(const SystemSpec& spec);

/// Seed of a prime-period-2k solution for A = [[0, gamma], [1/gamma, 0]]:
/// v_{1-k} = (a, b) with a != gamma * b.
InitialConditions construct_period2k_seed(const SystemSpec& spec, double a, double b);

/// Seed whose solution is unbounded when rho(A) > 1: the first candidate with a
/// nonzero projection on every eigenvector, tried in the order all-ones,
/// (1, 2, ..., m), then m pseudo-random vectors from a fixed seed.
InitialConditions construct_unbounded_seed(const SystemSpec& spec);

}  // namespace ratsys
