#include "ucp/interference.hpp"

#include <algorithm>
#include <cmath>

#include "ucp/error.hpp"
#include "ucp/states.hpp"

namespace ucp {

namespace {

constexpr double kPathOrthogonality = 1e-8;

Complex trace_of_product(const Matrix& a, const Matrix& b) {
  Complex t{};
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t += a(i, j) * b(j, i);
  return t;
}

}  // namespace

InterferenceReport interference_decomposition(const QuantumEvent& d, const QuantumEvent& e1,
                                              const QuantumEvent& e2, const QuantumEvent& f,
                                              double tol) {
  const DensityState rho = atom_state(d);
  if (!orthogonal(e1, e2)) throw Error(ErrorKind::NotOrthogonal, "the two paths must be orthogonal");
  if (e1.rank() == 0 || e2.rank() == 0) throw Error(ErrorKind::ZeroEvent, "paths must be non-zero events");
  if (e1.dim() != f.dim()) throw Error(ErrorKind::AlgebraMismatch, "detector event has the wrong dimension");

  const QuantumEvent both = oplus(e1, e2);
  InterferenceReport r;
  r.p_e1_given_d = prob(rho, e1);
  r.p_e2_given_d = prob(rho, e2);
  r.p_esum_given_d = prob(rho, both);
  if (r.p_esum_given_d <= tol) {
    throw Error(ErrorKind::ZeroProbabilityCondition, "neither path is reachable from the atom");
  }

  const QuantumEvent* paths[2] = {&e1, &e2};
  const double weights[2] = {r.p_e1_given_d, r.p_e2_given_d};
  double* terms[2] = {&r.term1, &r.term2};
  bool* blocked[2] = {&r.path1_blocked, &r.path2_blocked};
  for (int k = 0; k < 2; ++k) {
    if (weights[k] <= tol) {
      *blocked[k] = true;
      *terms[k] = 0.0;
      continue;
    }
    *terms[k] = prob(condition(rho, *paths[k]), f) * weights[k] / r.p_esum_given_d;
  }

  const Matrix e1fe2 = matmul(matmul(e1.matrix(), f.matrix()), e2.matrix());
  r.cross = 2.0 * trace_of_product(rho.rho().matrix(), e1fe2).real() / r.p_esum_given_d;

  const QuantumEvent seq[] = {both};
  r.p_total = prob(condition_seq(rho, seq), f);
  r.identity_residual = std::abs(r.p_total - (r.term1 + r.term2 + r.cross));
  return r;
}

double two_slit(const StateVector& xi, const StateVector& eta1, const StateVector& eta2,
                const StateVector& psi, double tol) {
  const std::size_t n = xi.dim();
  if (eta1.dim() != n || eta2.dim() != n || psi.dim() != n) {
    throw Error(ErrorKind::DimensionMismatch, "two_slit: all vectors must share one dimension");
  }
  if (std::abs(inner(eta1, eta2)) > kPathOrthogonality) {
    throw Error(ErrorKind::NotOrthogonal, "two_slit: slit vectors are not orthogonal");
  }
  const Complex a1 = inner(xi, eta1);
  const Complex a2 = inner(xi, eta2);
  const double denom = std::norm(a1) + std::norm(a2);
  if (denom <= tol) {
    throw Error(ErrorKind::DegenerateDenominator, "two_slit: source state misses both slits");
  }
  const Complex amplitude = a1 * inner(eta1, psi) + a2 * inner(eta2, psi);
  return std::clamp(std::norm(amplitude) / denom, 0.0, 1.0);
}

}  // namespace ucp
