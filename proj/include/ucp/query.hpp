#pragma once

// Dispatch of scenario queries onto the computational modules, the built-in
// demonstrations, and output formatting.

#include <cstdint>
#include <string>

#include "ucp/scenario.hpp"

namespace ucp::io {

struct RunOptions {
  double tol = 1e-9;
  std::uint64_t seed = 42;
  std::size_t trials = 100000;
  unsigned threads = 1;
  bool seed_set = false;    // explicit --seed overrides the scenario's query
  bool trials_set = false;  // explicit --trials overrides the scenario's query
};

/// Evaluates `query` (a validated query object) against the scenario. The
/// result document carries the query kind, a result record, the tolerances
/// used and any algebra warnings. Computation failures propagate as Error.
Json run_query(const Scenario& scenario, const Json& query, const RunOptions& opts = {});
inline Json run_query(const Scenario& scenario, const RunOptions& opts = {}) {
  return run_query(scenario, scenario.spec.query, opts);
}

// Built-in demonstrations; no input file needed.

/// The rank-two pair on C^4 with EFE = E/2: P(F|E) = 1/2 for every state.
Json demo_rank_two_pair(const RunOptions& opts = {});
/// Two atoms in C^3 observed in both orders before testing e2.
Json demo_order(const RunOptions& opts = {});
/// Two distinct conditional tables for a qubit (45 degree and 30 degree cases).
Json demo_qubit(const RunOptions& opts = {});

/// The orthospace axiom harness over Boolean algebras of 2..6 points and
/// projection lattices of dimension 3, 4 and 6.
Json run_axiom_suite(std::size_t budget, const RunOptions& opts = {});

/// 17 significant digits (round-trip exact) when `pretty` is false;
/// 6 significant digits with indentation otherwise.
std::string format_output(const Json& doc, bool pretty);

/// The projections E, F of the rank-two demo.
std::pair<QuantumEvent, QuantumEvent> rank_two_pair();

}  // namespace ucp::io
