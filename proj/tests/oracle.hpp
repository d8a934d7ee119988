#pragma once

// Reference computations for the tests. Everything here goes through Eigen
// (or plain loops for the Boolean case) and shares no code with the library.

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "ucp/matrix.hpp"

namespace oracle {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

inline MatrixXc to_eigen(const ucp::Matrix& m) {
  MatrixXc out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}
inline MatrixXc to_eigen(const ucp::HermitianOperator& h) { return to_eigen(h.matrix()); }
inline MatrixXc to_eigen(const ucp::Projection& p) { return to_eigen(p.matrix()); }

inline double diff(const ucp::Matrix& a, const MatrixXc& b) { return (to_eigen(a) - b).norm(); }
inline double diff(const ucp::HermitianOperator& a, const MatrixXc& b) { return diff(a.matrix(), b); }

inline MatrixXc jordan(const MatrixXc& x, const MatrixXc& y) { return 0.5 * (x * y + y * x); }

inline MatrixXc triple(const MatrixXc& x, const MatrixXc& y, const MatrixXc& z) {
  return jordan(x, jordan(y, z)) - jordan(y, jordan(z, x)) + jordan(z, jordan(x, y));
}

inline MatrixXc lueders(const MatrixXc& rho, const MatrixXc& e) {
  const MatrixXc num = e * rho * e;
  return num / num.trace().real();
}

inline double prob(const MatrixXc& rho, const MatrixXc& e) { return (rho * e).trace().real(); }

/// Orthonormal basis of range(P) from an eigendecomposition.
inline std::vector<VectorXc> range_basis(const MatrixXc& p) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(p);
  std::vector<VectorXc> out;
  for (Eigen::Index k = 0; k < p.rows(); ++k)
    if (es.eigenvalues()(k) > 0.5) out.push_back(es.eigenvectors().col(k));
  return out;
}

/// P(E|F) for a predictable pair, read off one basis vector of range(F):
/// if FEF = sF then <v|E|v> = s for every unit v in range(F).
inline double predicted_value(const MatrixXc& e, const MatrixXc& f) {
  const auto basis = range_basis(f);
  return (basis.front().adjoint() * e * basis.front())(0, 0).real();
}

/// Largest spread of <v|E|v> over an orthonormal basis of range(F) plus the
/// off-diagonal magnitude; zero exactly when FEF is a multiple of F.
inline double predictability_defect(const MatrixXc& e, const MatrixXc& f) {
  const auto basis = range_basis(f);
  const double s = predicted_value(e, f);
  double worst = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const std::complex<double> v = (basis[i].adjoint() * e * basis[j])(0, 0);
      worst = std::max(worst, std::abs(v - (i == j ? s : 0.0)));
    }
  return worst;
}

/// mu(E ∩ F) / mu(F) by brute force over sample points.
inline double classical_conditional(const std::vector<double>& w, const std::vector<bool>& e,
                                    const std::vector<bool>& f) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (f[i]) {
      den += w[i];
      if (e[i]) num += w[i];
    }
  }
  return num / den;
}

}  // namespace oracle
