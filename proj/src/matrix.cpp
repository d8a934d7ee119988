#include "ucp/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "ucp/error.hpp"

namespace ucp {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(op) + ": shapes " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()) + " differ");
  }
}

void require_same_dim(const HermitianOperator& a, const HermitianOperator& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(op) + ": dimensions " +
                                                  std::to_string(a.dim()) + " and " +
                                                  std::to_string(b.dim()) + " differ");
  }
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

Complex make_scalar(double re, double im) {
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw Error(ErrorKind::InvalidValue, "complex scalar must be finite");
  }
  return {re, im};
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{}) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorKind::DimensionMismatch,
                "matrix: expected " + std::to_string(rows * cols) + " entries, got " +
                    std::to_string(data_.size()));
  }
  if (!std::all_of(data_.begin(), data_.end(), finite)) {
    throw Error(ErrorKind::InvalidValue, "matrix: entries must be finite");
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
  Matrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

Complex Matrix::trace() const {
  if (!is_square()) throw Error(ErrorKind::DimensionMismatch, "trace: matrix is not square");
  Complex t{};
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other, "add");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other, "subtract");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch,
                "matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                    std::to_string(b.rows()) + " do not conform");
  }
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

double frobenius_norm(const Matrix& a) {
  double sum = 0.0;
  for (const Complex& z : a.entries()) sum += std::norm(z);
  return std::sqrt(sum);
}

CVector apply(const Matrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) {
    throw Error(ErrorKind::DimensionMismatch, "apply: vector length does not match matrix");
  }
  CVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] += a(i, j) * v[j];
  return out;
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::DimensionMismatch, "inner: vector lengths differ");
  }
  Complex s{};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// HermitianOperator

HermitianOperator::HermitianOperator(const Matrix& m, double tol) {
  if (!m.is_square() || m.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch, "Hermitian operator must be a non-empty square matrix");
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = i; j < m.cols(); ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) {
        throw Error(ErrorKind::NotHermitian, "entry (" + std::to_string(i) + "," +
                                                 std::to_string(j) +
                                                 ") is not the conjugate of its transpose");
      }
    }
  }
  *this = hermitian_part(m);
}

HermitianOperator HermitianOperator::hermitian_part(const Matrix& a) {
  if (!a.is_square()) throw Error(ErrorKind::DimensionMismatch, "hermitian_part: matrix is not square");
  HermitianOperator h;
  h.m_ = Matrix(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    h.m_(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < a.cols(); ++j) {
      const Complex z = 0.5 * (a(i, j) + std::conj(a(j, i)));
      h.m_(i, j) = z;
      h.m_(j, i) = std::conj(z);
    }
  }
  return h;
}

HermitianOperator HermitianOperator::identity(std::size_t n) {
  HermitianOperator h;
  h.m_ = Matrix::identity(n);
  return h;
}

HermitianOperator HermitianOperator::zero(std::size_t n) {
  HermitianOperator h;
  h.m_ = Matrix::zero(n);
  return h;
}

HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a, b, "add");
  HermitianOperator h;
  h.m_ = a.m_ + b.m_;
  return h;
}

HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
  require_same_dim(a, b, "subtract");
  HermitianOperator h;
  h.m_ = a.m_ - b.m_;
  return h;
}

HermitianOperator operator*(double s, const HermitianOperator& a) {
  HermitianOperator h;
  h.m_ = a.m_ * Complex(s);
  return h;
}

HermitianOperator jordan_product(const HermitianOperator& x, const HermitianOperator& y) {
  require_same_dim(x, y, "jordan_product");
  // XY + YX is assembled by a commutative elementwise sum, so swapping the
  // arguments reproduces the result bit for bit.
  Matrix sum = matmul(x.matrix(), y.matrix()) + matmul(y.matrix(), x.matrix());
  sum *= 0.5;
  return HermitianOperator::hermitian_part(sum);
}

HermitianOperator triple(const HermitianOperator& x, const HermitianOperator& y,
                         const HermitianOperator& z) {
  require_same_dim(x, y, "triple");
  require_same_dim(x, z, "triple");
  return jordan_product(x, jordan_product(y, z)) - jordan_product(y, jordan_product(z, x)) +
         jordan_product(z, jordan_product(x, y));
}

HermitianOperator quadratic_triple(const HermitianOperator& x, const HermitianOperator& y) {
  require_same_dim(x, y, "quadratic_triple");
  return HermitianOperator::hermitian_part(matmul(matmul(x.matrix(), y.matrix()), x.matrix()));
}

double min_eigenvalue(const HermitianOperator& a) {
  const std::size_t n = a.dim();
  Eigen::MatrixXcd m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_positive_semidefinite(const HermitianOperator& a, double tol) {
  return min_eigenvalue(a) >= -tol;
}

// ---------------------------------------------------------------------------
// Projection

Projection::Projection(HermitianOperator op, double tol) : op_(std::move(op)) {
  const Matrix& p = op_.matrix();
  const double residual = frobenius_norm(matmul(p, p) - p);
  if (residual > tol * std::max(1.0, frobenius_norm(p))) {
    throw Error(ErrorKind::NotProjection,
                "operator is not idempotent (||P^2 - P||_F = " + std::to_string(residual) + ")");
  }
  const double tr = op_.trace();
  const double rounded = std::round(tr);
  if (std::abs(tr - rounded) > tol || rounded < 0.0) {
    throw Error(ErrorKind::NotProjection, "trace " + std::to_string(tr) + " is not an integer rank");
  }
  rank_ = static_cast<std::size_t>(rounded);
}

Projection::Projection(const Matrix& m, const Tolerances& tol)
    : Projection(HermitianOperator(m, tol.hermitian), tol.idempotent) {}

Projection Projection::zero(std::size_t n) { return Projection(HermitianOperator::zero(n)); }

Projection Projection::identity(std::size_t n) {
  return Projection(HermitianOperator::identity(n));
}

std::vector<CVector> orthonormal_basis(std::span<const CVector> vectors, double tol) {
  if (vectors.empty()) throw Error(ErrorKind::EmptyInput, "span: no vectors given");
  const std::size_t n = vectors.front().size();
  if (n == 0) throw Error(ErrorKind::EmptyInput, "span: vectors are empty");
  double max_norm = 0.0;
  for (const auto& v : vectors) {
    if (v.size() != n) throw Error(ErrorKind::DimensionMismatch, "span: vector lengths differ");
    if (!std::all_of(v.begin(), v.end(), finite)) {
      throw Error(ErrorKind::InvalidValue, "span: vector entries must be finite");
    }
    max_norm = std::max(max_norm, norm(v));
  }
  const double drop = tol * max_norm;

  std::vector<CVector> basis;
  for (const auto& v : vectors) {
    CVector w = v;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) {
        const Complex c = inner(q, w);
        for (std::size_t i = 0; i < n; ++i) w[i] -= c * q[i];
      }
    }
    const double len = norm(w);
    if (len <= drop || len == 0.0) continue;
    for (auto& z : w) z /= len;
    basis.push_back(std::move(w));
  }
  return basis;
}

Projection projector_from_span(std::span<const CVector> vectors, double tol) {
  const auto basis = orthonormal_basis(vectors, tol);
  const std::size_t n = vectors.front().size();
  Matrix p(n, n);
  for (const auto& q : basis) p += Matrix::outer(q, q);
  return Projection(HermitianOperator::hermitian_part(p));
}

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(CVector entries, double tol) : v_(std::move(entries)) {
  if (v_.empty()) throw Error(ErrorKind::EmptyInput, "state vector is empty");
  if (!std::all_of(v_.begin(), v_.end(), finite)) {
    throw Error(ErrorKind::InvalidValue, "state vector entries must be finite");
  }
  const double len = norm(v_);
  if (std::abs(len - 1.0) > tol) {
    throw Error(ErrorKind::InvalidValue,
                "state vector has norm " + std::to_string(len) + ", expected 1");
  }
}

StateVector StateVector::normalized(CVector entries, double tol) {
  if (entries.empty()) throw Error(ErrorKind::EmptyInput, "state vector is empty");
  const double len = norm(entries);
  if (!std::isfinite(len) || std::abs(len - 1.0) > tol) {
    throw Error(ErrorKind::InvalidValue,
                "state vector has norm " + std::to_string(len) + ", not within " +
                    std::to_string(tol) + " of 1");
  }
  for (auto& z : entries) z /= len;
  return StateVector(std::move(entries));
}

Projection StateVector::projector() const {
  return Projection(HermitianOperator::hermitian_part(Matrix::outer(v_, v_)));
}

}  // namespace ucp
