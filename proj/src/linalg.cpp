#include "ratsys/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ratsys/errors.hpp"

namespace ratsys {

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
  Matrix out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "matrix row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                      " entries, expected " + std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (!std::isfinite(rows[i][j])) {
        throw Error(ErrorCode::kNonFinite, "matrix entry (" + std::to_string(i) + "," +
                                               std::to_string(j) + ") is not finite");
      }
      out(i, j) = rows[i][j];
    }
  }
  return out;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<Vec> r;
  r.reserve(rows.size());
  for (const auto& row : rows) r.emplace_back(row);
  return from_rows(r);
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix out(dim);
  for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1.0;
  return out;
}

bool Matrix::finite() const {
  return std::all_of(a_.begin(), a_.end(), [](double x) { return std::isfinite(x); });
}

bool Matrix::nonnegative() const {
  return std::all_of(a_.begin(), a_.end(), [](double x) { return x >= 0.0; });
}

bool Matrix::positive() const {
  return std::all_of(a_.begin(), a_.end(), [](double x) { return x > 0.0; });
}

bool Matrix::symmetric() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

Matrix Matrix::scaled(double c) const {
  Matrix out = *this;
  for (double& x : out.a_) x *= c;
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::kDimensionMismatch, "matrix product dimensions differ");
  const std::size_t n = a.dim();
  Matrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t l = 0; l < n; ++l) s += a(i, l) * b(l, j);
      out(i, j) = s;
    }
  return out;
}

Vec operator*(const Matrix& a, std::span<const double> v) {
  if (a.dim() != v.size()) throw Error(ErrorCode::kDimensionMismatch, "matrix-vector dimensions differ");
  Vec out(a.dim(), 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.dim(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

Matrix power(const Matrix& a, unsigned p) {
  Matrix result = Matrix::identity(a.dim());
  Matrix base = a;
  while (p > 0) {
    if (p & 1u) result = result * base;
    p >>= 1u;
    if (p > 0) base = base * base;
  }
  return result;
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

double norm_inf(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double dist_inf(std::span<const double> x, std::span<const double> y) {
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

double dist2(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

namespace {

void orient(Vec& w) {
  std::size_t best = 0;
  double mag = -1.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    // first index wins near-ties so (1,-1)/sqrt(2) orients deterministically
    if (std::abs(w[i]) > mag + 1e-12) {
      mag = std::abs(w[i]);
      best = i;
    }
  }
  if (w[best] < 0.0)
    for (double& x : w) x = -x;
}

void normalize(Vec& w) {
  const double n = norm2(w);
  for (double& x : w) x /= n;
}

void closed_form_2x2(const Matrix& a, Vec& values, std::vector<Vec>& vectors) {
  const double p = a(0, 0), b = a(0, 1), d = a(1, 1);
  // tr^2 - 4 det == (p - d)^2 + 4 b^2 for symmetric input; the right side
  // cannot go negative through cancellation.
  const double tr = p + d;
  const double root = std::sqrt((p - d) * (p - d) + 4.0 * b * b);
  const double l1 = 0.5 * (tr + root);
  const double l2 = 0.5 * (tr - root);
  if (b == 0.0) {
    values = {p, d};
    vectors = {{1.0, 0.0}, {0.0, 1.0}};
    return;
  }
  values = {l1, l2};
  // Pick the better-conditioned of the two null vectors of (A - l1 I), then
  // take the exact perpendicular for l2.
  Vec u{b, l1 - p};
  Vec v{l1 - d, b};
  Vec w1 = norm2(u) >= norm2(v) ? u : v;
  normalize(w1);
  vectors = {w1, {-w1[1], w1[0]}};
}

void jacobi(const Matrix& a, Vec& values, std::vector<Vec>& vectors) {
  const std::size_t n = a.dim();
  Matrix s = a;
  Matrix v = Matrix::identity(n);
  double total = 0.0;
  for (double x : a.data()) total += x * x;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
    if (off == 0.0 || off <= 1e-34 * total) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = s(p, q);
        if (apq == 0.0) continue;
        const double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t r = 0; r < n; ++r) {
          const double arp = s(r, p), arq = s(r, q);
          s(r, p) = c * arp - sn * arq;
          s(r, q) = sn * arp + c * arq;
        }
        for (std::size_t r = 0; r < n; ++r) {
          const double apr = s(p, r), aqr = s(q, r);
          s(p, r) = c * apr - sn * aqr;
          s(q, r) = sn * apr + c * aqr;
        }
        s(p, q) = 0.0;
        s(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          const double vrp = v(r, p), vrq = v(r, q);
          v(r, p) = c * vrp - sn * vrq;
          v(r, q) = sn * vrp + c * vrq;
        }
      }
    }
  }

  values.assign(n, 0.0);
  vectors.assign(n, Vec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    values[i] = s(i, i);
    for (std::size_t r = 0; r < n; ++r) vectors[i][r] = v(r, i);
  }
}

void require_symmetric_finite(const Matrix& a) {
  if (a.dim() == 0) throw Error(ErrorCode::kDimensionMismatch, "matrix is empty");
  if (!a.finite()) throw Error(ErrorCode::kNonFinite, "matrix has non-finite entries");
  if (!a.symmetric()) throw Error(ErrorCode::kNotSymmetric, "matrix is not symmetric");
}

}  // namespace

EigenDecomposition eig_symmetric(const Matrix& a) {
  require_symmetric_finite(a);
  Vec values;
  std::vector<Vec> vectors;
  if (a.dim() == 1) {
    values = {a(0, 0)};
    vectors = {{1.0}};
  } else if (a.dim() == 2) {
    closed_form_2x2(a, values, vectors);
  } else {
    jacobi(a, values, vectors);
  }

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    const double ax = std::abs(values[x]), ay = std::abs(values[y]);
    if (ax != ay) return ax > ay;
    return values[x] > values[y];
  });

  EigenDecomposition out;
  for (std::size_t idx : order) {
    out.eigenvalues.push_back(values[idx]);
    Vec w = vectors[idx];
    orient(w);
    out.eigenvectors.push_back(std::move(w));
  }
  out.spectral_radius = std::abs(out.eigenvalues.front());

  if (a.positive()) {
    const Vec& w = out.eigenvectors.front();
    if (out.eigenvalues.front() > 0.0 &&
        std::all_of(w.begin(), w.end(), [](double x) { return x > 0.0; })) {
      out.perron = PerronPair{out.eigenvalues.front(), w};
    }
  }
  return out;
}

double spectral_radius(const Matrix& a) { return eig_symmetric(a).spectral_radius; }

PerronPair perron_pair(const Matrix& a, int max_iters) {
  if (a.dim() == 0) throw Error(ErrorCode::kDimensionMismatch, "matrix is empty");
  if (!a.finite()) throw Error(ErrorCode::kNonFinite, "matrix has non-finite entries");
  if (!a.positive()) throw Error(ErrorCode::kNotPositive, "Perron pair requires strictly positive entries");

  const std::size_t n = a.dim();
  Vec w(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double r = 0.0;
  double residual = 0.0;
  double best = INFINITY;
  int stalled = 0;
  for (int it = 0; it < max_iters; ++it) {
    Vec y = a * w;
    r = norm2(y);
    for (double& x : y) x /= r;
    w = std::move(y);

    const Vec aw = a * w;
    r = dot(w, aw);
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual = std::max(residual, std::abs(aw[i] - r * w[i]));
    // Stop once the residual sits at rounding level and has stopped improving.
    if (residual < best) {
      best = residual;
      stalled = 0;
    } else if (++stalled >= 3 && residual <= kEigTol) {
      break;
    }
    if (residual <= 1e-15 * std::max(1.0, r)) break;
  }
  if (residual > kEigTol) {
    throw Error(ErrorCode::kNotConverged,
                "power iteration did not converge within " + std::to_string(max_iters) + " iterations");
  }
  return PerronPair{r, std::move(w)};
}

Fact1Result check_fact1(const Matrix& a, std::span<const double> v, unsigned power_l) {
  const EigenDecomposition eig = eig_symmetric(a);
  if (std::abs(eig.spectral_radius - 1.0) > kRhoTol)
    throw Error(ErrorCode::kSpectralRadius, "norm contraction check requires spectral radius 1");
  if (v.size() != a.dim()) throw Error(ErrorCode::kDimensionMismatch, "vector dimension differs from matrix");
  if (power_l == 0) throw Error(ErrorCode::kInvalidArgument, "power L must be at least 1");

  Vec u(v.begin(), v.end());
  for (unsigned l = 0; l < power_l; ++l) u = a * u;
  const double hu = dot(u, u);
  const double hv = dot(v, v);

  double off_unit = 0.0;
  for (std::size_t i = 0; i < eig.eigenvalues.size(); ++i) {
    if (std::abs(eig.eigenvalues[i]) < 1.0 - kRhoTol) {
      const double c = dot(v, eig.eigenvectors[i]);
      off_unit += c * c;
    }
  }

  Fact1Result out;
  out.bounded = hu <= hv + kEigTol;
  out.norm_preserved = std::abs(hu - hv) <= kEigTol;
  out.in_unit_span = std::sqrt(off_unit) <= kEigTol;
  return out;
}

bool check_fact2(const Matrix& a, std::span<const double> v, double growth_threshold,
                 unsigned max_l) {
  const EigenDecomposition eig = eig_symmetric(a);
  if (eig.spectral_radius <= 1.0 + kRhoTol)
    throw Error(ErrorCode::kSpectralRadius, "growth check requires spectral radius greater than 1");
  if (v.size() != a.dim()) throw Error(ErrorCode::kDimensionMismatch, "vector dimension differs from matrix");
  for (std::size_t i = 0; i < eig.eigenvectors.size(); ++i) {
    if (std::abs(dot(v, eig.eigenvectors[i])) <= kEigTol) {
      throw Error(ErrorCode::kNotGeneric,
                  "vector is orthogonal to eigenvector " + std::to_string(i) + " (lambda = " +
                      std::to_string(eig.eigenvalues[i]) + ")");
    }
  }
  Vec u(v.begin(), v.end());
  for (unsigned l = 1; l <= max_l; ++l) {
    u = a * u;
    const double n = norm2(u);
    if (!(n <= growth_threshold)) return true;  // also catches overflow to inf
  }
  return false;
}

}  // namespace ratsys
