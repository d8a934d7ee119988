#pragma once

#include <cmath>

#include "ucp/events.hpp"
#include "ucp/matrix.hpp"
#include "ucp/random.hpp"
#include "ucp/states.hpp"

namespace testing {

/// Rank-one projection onto v/|v|.
inline ucp::QuantumEvent atom(ucp::CVector v) {
  const double n = ucp::norm(v);
  for (auto& x : v) x /= n;
  return ucp::QuantumEvent(ucp::StateVector(std::move(v)).projector());
}

inline ucp::Matrix real_matrix(std::size_t n, std::initializer_list<double> entries) {
  ucp::CVector data(entries.begin(), entries.end());
  return ucp::Matrix(n, n, std::move(data));
}

/// The rank-two pair on C^4 used throughout: E = diag(1,1,0,0) and F the
/// projection onto span{(e1+e3)/√2, (e2+e4)/√2}.
inline ucp::QuantumEvent pair_e() {
  return ucp::QuantumEvent(ucp::Projection(real_matrix(4, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0})));
}
inline ucp::QuantumEvent pair_f() {
  return ucp::QuantumEvent(ucp::Projection(
      real_matrix(4, {.5, 0, .5, 0, 0, .5, 0, .5, .5, 0, .5, 0, 0, .5, 0, .5})));
}

inline ucp::DensityState random_density(std::size_t n, ucp::random::Engine& rng) {
  return ucp::DensityState(ucp::random::density(n, rng));
}

}  // namespace testing
