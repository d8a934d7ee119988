#pragma once

// Monte Carlo simulation of sequential yes/no tests with Lüders updates.
//
// Every trial draws its uniforms from a counter-based generator keyed by
// (seed, trial index), so results do not depend on how trials are spread
// over threads.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ucp/events.hpp"
#include "ucp/states.hpp"

namespace ucp {

struct SamplerConfig {
  std::uint64_t seed = 42;
  std::size_t trials = 100000;
  double tol = 1e-9;
  unsigned threads = 1;
};

/// Branches with probability below this are never taken.
inline constexpr double kDegenerateBranch = 1e-14;

struct ChainResult {
  /// Outcome string over the tests ('1' = yes, '0' = no) -> number of trials.
  std::map<std::string, std::size_t> outcome_counts;
  std::size_t trials = 0;
  std::size_t all_yes_count = 0;
  std::size_t final_event_yes_count = 0;  // among the all-yes trials
  double empirical_p = 0.0;               // NaN when no trial passed every test
  double std_error = 0.0;
  std::optional<double> predicted_p;

  friend bool operator==(const ChainResult&, const ChainResult&) = default;
};

/// Counter-based uniform generator: splitmix64 over (seed, trial, draw).
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x);

ChainResult sample_chain(const DensityState& initial, std::span<const QuantumEvent> tests,
                         const QuantumEvent& final_event, const SamplerConfig& cfg);
ChainResult sample_chain(const ClassicalState& initial, std::span<const BooleanEvent> tests,
                         const BooleanEvent& final_event, const SamplerConfig& cfg);
ChainResult sample_chain(const State& initial, std::span<const Event> tests, const Event& final_event,
                         const SamplerConfig& cfg);

/// Exact probability of every outcome string over the tests.
std::map<std::string, double> outcome_distribution(const DensityState& initial,
                                                   std::span<const QuantumEvent> tests);

struct IndependenceReport {
  double predicted = 0.0;
  std::vector<ChainResult> runs;
  std::vector<bool> within_band;  // |empirical - predicted| <= 4 std_error
  bool pass = false;
};

/// Runs one chain per initial state (seed offset by the state's index) and
/// checks every empirical estimate against the state-independent value.
/// Throws NotPredictable if there is none, and ZeroProbabilityCondition if
/// some initial state cannot pass all tests.
IndependenceReport state_independence_check(const QuantumEvent& target, std::span<const QuantumEvent> tests,
                                             std::span<const DensityState> initial_states,
                                             const SamplerConfig& cfg);

}  // namespace ucp
