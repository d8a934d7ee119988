#include "ucp/random.hpp"

#include <cmath>

namespace ucp::random {

HermitianOperator hermitian(std::size_t n, Engine& rng, double scale) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double off = scale / std::sqrt(2.0);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = scale * unit(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex z(off * unit(rng), off * unit(rng));
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return HermitianOperator(m);
}

CVector gaussian_vector(std::size_t n, Engine& rng) {
  std::normal_distribution<double> gauss;
  CVector v(n);
  for (auto& z : v) z = Complex(gauss(rng), gauss(rng));
  return v;
}

Matrix unitary(std::size_t n, Engine& rng) {
  std::vector<CVector> columns;
  while (true) {
    columns.clear();
    for (std::size_t k = 0; k < n; ++k) columns.push_back(gaussian_vector(n, rng));
    auto basis = orthonormal_basis(columns, 1e-8);
    if (basis.size() != n) continue;  // measure-zero rank deficiency
    Matrix u(n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) u(i, j) = basis[j][i];
    return u;
  }
}

StateVector unit_vector(std::size_t n, Engine& rng) {
  CVector v = gaussian_vector(n, rng);
  const double len = norm(v);
  for (auto& z : v) z /= len;
  return StateVector(std::move(v));
}

Projection frame_projection(const Matrix& frame, std::span<const std::size_t> columns) {
  const std::size_t n = frame.rows();
  Matrix p(n, n);
  for (std::size_t c : columns) {
    CVector q(n);
    for (std::size_t i = 0; i < n; ++i) q[i] = frame(i, c);
    p += Matrix::outer(q, q);
  }
  return Projection(HermitianOperator::hermitian_part(p));
}

Projection projection(std::size_t n, std::size_t rank, Engine& rng) {
  const Matrix u = unitary(n, rng);
  std::vector<std::size_t> cols(rank);
  for (std::size_t k = 0; k < rank; ++k) cols[k] = k;
  return frame_projection(u, cols);
}

HermitianOperator density(std::size_t n, Engine& rng) {
  Matrix g(n, n);
  std::normal_distribution<double> gauss;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  Matrix rho = matmul(g, g.adjoint());
  rho *= 1.0 / rho.trace().real();
  return HermitianOperator::hermitian_part(rho);
}

}  // namespace ucp::random
