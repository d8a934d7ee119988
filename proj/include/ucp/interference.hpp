#pragma once

#include "ucp/events.hpp"
#include "ucp/matrix.hpp"

namespace ucp {

/// Probability of F after an atom D and the exclusive alternatives E1, E2,
/// split into the two single-path terms and the cross term.
struct InterferenceReport {
  double p_total = 0.0;  // P(F | D, E1 + E2), by direct conditioning
  double term1 = 0.0;    // P(F | D, E1) P(E1 | D) / P(E1 + E2 | D)
  double term2 = 0.0;
  double cross = 0.0;    // 2 Re rho_D(E1 F E2) / P(E1 + E2 | D)
  double p_e1_given_d = 0.0;
  double p_e2_given_d = 0.0;
  double p_esum_given_d = 0.0;
  bool path1_blocked = false;  // P(E1 | D) <= tol, term1 set to 0
  bool path2_blocked = false;
  double identity_residual = 0.0;  // |p_total - (term1 + term2 + cross)|

  double classical_sum() const { return term1 + term2; }
};

InterferenceReport interference_decomposition(const QuantumEvent& d, const QuantumEvent& e1,
                                              const QuantumEvent& e2, const QuantumEvent& f,
                                              double tol = 1e-12);

/// |<xi|eta1><eta1|psi> + <xi|eta2><eta2|psi>|^2 / (|<xi|eta1>|^2 + |<xi|eta2>|^2)
///
/// eta1 and eta2 must be orthogonal to within 1e-8; they are not
/// re-orthogonalized.
double two_slit(const StateVector& xi, const StateVector& eta1, const StateVector& eta2,
                const StateVector& psi, double tol = 1e-12);

}  // namespace ucp
