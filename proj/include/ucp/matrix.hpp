#pragma once

// Dense complex matrices and the Jordan-algebraic operations on Hermitian
// operators. All types are immutable values once constructed; the mutating
// compound operators on Matrix exist only for local assembly.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ucp {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

struct Tolerances {
  double hermitian = 1e-10;   // absolute, on |a_ij - conj(a_ji)|
  double idempotent = 1e-9;   // relative, on ||P^2 - P||_F
  double norm = 1e-10;        // absolute, on | ||v|| - 1 |
};

/// Builds a scalar, rejecting NaN and infinities.
Complex make_scalar(double re, double im = 0.0);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  /// Row-major entries; throws DimensionMismatch on a size mismatch and
  /// InvalidValue on non-finite entries.
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t n) { return Matrix(n, n); }
  /// |a><b|, i.e. a b^dagger.
  static Matrix outer(std::span<const Complex> a, std::span<const Complex> b);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const Complex> entries() const noexcept { return data_; }

  Matrix adjoint() const;
  Complex trace() const;

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(Complex s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
  friend Matrix operator*(Complex s, Matrix a) { return a *= s; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
inline Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }

/// sqrt(sum |a_ij|^2)
double frobenius_norm(const Matrix& a);

CVector apply(const Matrix& a, std::span<const Complex> v);

/// <a|b>, antilinear in the first argument.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm(std::span<const Complex> v);

/// Complex self-adjoint matrix. The stored entries are exactly Hermitian: the
/// constructor validates against the tolerance and then symmetrizes.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(const Matrix& m, double tol = Tolerances{}.hermitian);

  /// (A + A^dagger)/2 for any square A, without validation.
  static HermitianOperator hermitian_part(const Matrix& a);
  static HermitianOperator identity(std::size_t n);
  static HermitianOperator zero(std::size_t n);

  std::size_t dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b);
  friend HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b);
  friend HermitianOperator operator*(double s, const HermitianOperator& a);
  friend bool operator==(const HermitianOperator&, const HermitianOperator&) = default;

 private:
  Matrix m_;
};

inline double frobenius_norm(const HermitianOperator& a) { return frobenius_norm(a.matrix()); }

/// X o Y = (XY + YX)/2. Exactly commutative in its arguments.
HermitianOperator jordan_product(const HermitianOperator& x, const HermitianOperator& y);

/// {X,Y,Z} = X o (Y o Z) - Y o (Z o X) + Z o (X o Y)
HermitianOperator triple(const HermitianOperator& x, const HermitianOperator& y,
                         const HermitianOperator& z);

/// XYX evaluated associatively; equals triple(X, Y, X) for matrix algebras.
HermitianOperator quadratic_triple(const HermitianOperator& x, const HermitianOperator& y);

/// Smallest eigenvalue (dense Hermitian eigensolver).
double min_eigenvalue(const HermitianOperator& a);
bool is_positive_semidefinite(const HermitianOperator& a, double tol = 1e-10);

/// Orthogonal projection: Hermitian and idempotent, with rank = round(trace).
class Projection {
 public:
  Projection() = default;
  explicit Projection(HermitianOperator op, double tol = Tolerances{}.idempotent);
  explicit Projection(const Matrix& m, const Tolerances& tol = {});

  static Projection zero(std::size_t n);
  static Projection identity(std::size_t n);

  std::size_t dim() const noexcept { return op_.dim(); }
  std::size_t rank() const noexcept { return rank_; }
  const HermitianOperator& op() const noexcept { return op_; }
  const Matrix& matrix() const noexcept { return op_.matrix(); }

 private:
  HermitianOperator op_;
  std::size_t rank_ = 0;
};

/// Orthonormal basis of span(vectors) by modified Gram-Schmidt with one
/// re-orthogonalization pass. Vectors whose residual norm falls below
/// tol * (largest input norm) are dropped.
std::vector<CVector> orthonormal_basis(std::span<const CVector> vectors, double tol = 1e-10);

/// Orthogonal projection onto span(vectors).
Projection projector_from_span(std::span<const CVector> vectors, double tol = 1e-10);

/// Unit vector in C^n.
class StateVector {
 public:
  explicit StateVector(CVector entries, double tol = Tolerances{}.norm);

  /// Rescales to unit norm when already within `tol` of it; throws
  /// InvalidValue otherwise.
  static StateVector normalized(CVector entries, double tol = 1e-6);

  std::size_t dim() const noexcept { return v_.size(); }
  std::span<const Complex> entries() const noexcept { return v_; }
  Complex operator[](std::size_t i) const { return v_[i]; }

  /// |v><v|
  Projection projector() const;

 private:
  CVector v_;
};

inline Complex inner(const StateVector& a, const StateVector& b) {
  return inner(a.entries(), b.entries());
}

}  // namespace ucp
