#pragma once

// Small dense real-matrix kernel. Dimensions are desk scale (m <= 8), so
// everything is value-typed and allocation is not a concern.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace ratsys {

using Vec = std::vector<double>;

inline constexpr double kEigTol = 1e-10;
inline constexpr double kRhoTol = 1e-9;
inline constexpr int kMaxPowerIters = 10000;

/// Square row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), a_(dim * dim, 0.0) {}

  /// Throws kDimensionMismatch on ragged or non-square input and kNonFinite
  /// on NaN/inf entries.
  static Matrix from_rows(const std::vector<Vec>& rows);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
  std::span<const double> row(std::size_t i) const { return {a_.data() + i * dim_, dim_}; }
  std::span<const double> data() const { return a_; }

  bool finite() const;
  bool nonnegative() const;
  bool positive() const;
  /// Exact comparison a_ij == a_ji.
  bool symmetric() const;

  Matrix scaled(double c) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<double> a_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vec operator*(const Matrix& a, std::span<const double> v);
/// a^p by repeated squaring; a^0 is the identity.
Matrix power(const Matrix& a, unsigned p);

double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
double norm_inf(std::span<const double> x);
/// Componentwise max |x_i - y_i|.
double dist_inf(std::span<const double> x, std::span<const double> y);
double dist2(std::span<const double> x, std::span<const double> y);

struct PerronPair {
  double r = 0.0;
  Vec w;  // unit 2-norm, strictly positive components
};

struct EigenDecomposition {
  Vec eigenvalues;             // descending |lambda|, ties by descending value
  std::vector<Vec> eigenvectors;  // unit; orthonormal for symmetric input
  double spectral_radius = 0.0;
  std::optional<PerronPair> perron;  // set when every entry is positive
};

/// Full real spectrum of a symmetric matrix. m = 2 uses the closed form
/// lambda = (tr +- sqrt(tr^2 - 4 det)) / 2, larger m cyclic Jacobi rotations.
/// Each eigenvector is oriented so its largest-magnitude component is positive.
EigenDecomposition eig_symmetric(const Matrix& a);

double spectral_radius(const Matrix& a);

/// Power iteration from the normalized all-ones vector. Requires every entry
/// of `a` to be strictly positive.
PerronPair perron_pair(const Matrix& a, int max_iters = kMaxPowerIters);

struct Fact1Result {
  bool bounded = false;         // ||A^L v||^2 <= ||v||^2 + eig_tol
  bool norm_preserved = false;  // | ||A^L v||^2 - ||v||^2 | <= eig_tol
  bool in_unit_span = false;    // v has no component along |lambda| < 1 eigenvectors
  bool consistent() const { return norm_preserved == in_unit_span; }
};

/// Norm contraction under powers of a symmetric matrix with spectral radius 1.
Fact1Result check_fact1(const Matrix& a, std::span<const double> v, unsigned power_l);

/// True iff ||A^L v|| exceeds `growth_threshold` for some 1 <= L <= max_l.
/// Requires rho(A) > 1 and |<v, w_i>| > eig_tol for every eigenvector w_i
/// (kNotGeneric otherwise).
bool check_fact2(const Matrix& a, std::span<const double> v, double growth_threshold,
                 unsigned max_l);

}  // namespace ratsys
