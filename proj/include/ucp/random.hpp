#pragma once

// Random generators for operators, frames and states. Used by the axiom
// harness and by property tests; all draws go through a caller-owned engine
// so runs are reproducible from a seed.

#include <cstddef>
#include <random>

#include "ucp/matrix.hpp"

namespace ucp::random {

using Engine = std::mt19937_64;

/// Entries with |a_ij| <= scale; real diagonal in [-scale, scale].
HermitianOperator hermitian(std::size_t n, Engine& rng, double scale = 1.0);

/// Unitary from Gram-Schmidt on a complex Gaussian matrix (columns are the
/// orthonormal frame).
Matrix unitary(std::size_t n, Engine& rng);

CVector gaussian_vector(std::size_t n, Engine& rng);
StateVector unit_vector(std::size_t n, Engine& rng);

/// Projection onto `rank` columns of a fresh random unitary.
Projection projection(std::size_t n, std::size_t rank, Engine& rng);

/// Projection onto the given columns of a frame.
Projection frame_projection(const Matrix& frame, std::span<const std::size_t> columns);

/// G G^dagger / trace for a complex Gaussian G: full-rank almost surely.
HermitianOperator density(std::size_t n, Engine& rng);

}  // namespace ucp::random
