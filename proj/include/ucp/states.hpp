#pragma once

// States on the two event structures, conditioning (restriction and
// renormalization for Boolean lattices, Lüders updates for projections),
// detection of state-independent conditional probabilities, compatibility,
// and the finite-table construction showing non-unique conditioning on a
// qubit.

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ucp/events.hpp"
#include "ucp/matrix.hpp"

namespace ucp {

/// Conditioning on an event whose probability is at or below this is an error.
inline constexpr double kConditionTol = 1e-12;
/// Relative residual bound for {F,E,F} = sF.
inline constexpr double kPredictTol = 1e-8;

class ClassicalState {
 public:
  /// Weights must be non-negative and sum to 1 within 1e-12.
  ClassicalState(std::shared_ptr<const SampleSpace> space, std::vector<double> weights);

  static ClassicalState uniform(std::shared_ptr<const SampleSpace> space);
  static ClassicalState point_mass(std::shared_ptr<const SampleSpace> space, std::size_t point);

  const SampleSpace& space() const noexcept { return *space_; }
  const std::shared_ptr<const SampleSpace>& space_ptr() const noexcept { return space_; }
  const std::vector<double>& weights() const noexcept { return weights_; }

 private:
  std::shared_ptr<const SampleSpace> space_;
  std::vector<double> weights_;
};

class DensityState {
 public:
  /// Trace 1 within 1e-10 and smallest eigenvalue >= -1e-10.
  explicit DensityState(HermitianOperator rho);

  static DensityState maximally_mixed(std::size_t n);
  static DensityState pure(const StateVector& v);

  std::size_t dim() const noexcept { return rho_.dim(); }
  const HermitianOperator& rho() const noexcept { return rho_; }

 private:
  struct Trusted {};
  DensityState(HermitianOperator rho, Trusted) : rho_(std::move(rho)) {}

  friend DensityState condition(const DensityState&, const QuantumEvent&, double);
  friend DensityState atom_state(const QuantumEvent&);

  HermitianOperator rho_;
};

using State = std::variant<ClassicalState, DensityState>;

// ---------------------------------------------------------------------------
// Probabilities and conditioning

double prob(const ClassicalState& mu, const BooleanEvent& e);
/// trace(rho E), clamped into [0, 1].
double prob(const DensityState& mu, const QuantumEvent& e);
double prob(const State& mu, const Event& e);

/// Weights restricted to `e` and renormalized.
ClassicalState condition(const ClassicalState& mu, const BooleanEvent& e, double tol = kConditionTol);
/// E rho E / trace(rho E).
DensityState condition(const DensityState& mu, const QuantumEvent& e, double tol = kConditionTol);
State condition(const State& mu, const Event& e, double tol = kConditionTol);

/// Left-to-right fold of `condition`. A vanishing intermediate probability
/// throws SequenceError(ZeroProbabilityCondition) carrying its index.
ClassicalState condition_seq(const ClassicalState& mu, std::span<const BooleanEvent> events,
                             double tol = kConditionTol);
DensityState condition_seq(const DensityState& mu, std::span<const QuantumEvent> events,
                           double tol = kConditionTol);
State condition_seq(const State& mu, std::span<const Event> events, double tol = kConditionTol);

// ---------------------------------------------------------------------------
// State-independent conditional probabilities

struct PredictabilityResult {
  bool predictable = false;
  double s = 0.0;          // candidate P(E | F_1, ..., F_n)
  double residual = 0.0;   // ||A - sB||_F
  double threshold = 0.0;  // tol * max(1, ||B||_F)
  bool near_miss = false;  // residual in (threshold, 10 * threshold]
};

/// P(target | given): s = trace(FEF)/trace(F), certified by ||FEF - sF||_F.
/// On Boolean lattices only the trivial cases given ⊆ target (s = 1) and
/// given ⊆ complement(target) (s = 0) are predictable.
PredictabilityResult predictability(const QuantumEvent& target, const QuantumEvent& given,
                                    double tol = kPredictTol);
PredictabilityResult predictability(const BooleanEvent& target, const BooleanEvent& given,
                                    double tol = kPredictTol);
PredictabilityResult predictability(const Event& target, const Event& given, double tol = kPredictTol);

/// P(target | F_1, ..., F_n) via M = F_1...F_n: A = M E M^dagger, B = M M^dagger.
/// Throws ImpossibleSequence when trace(B) <= tol.
PredictabilityResult predictability_seq(const QuantumEvent& target,
                                        std::span<const QuantumEvent> given,
                                        double tol = kPredictTol);
PredictabilityResult predictability_seq(const BooleanEvent& target,
                                        std::span<const BooleanEvent> given,
                                        double tol = kPredictTol);
PredictabilityResult predictability_seq(const Event& target, std::span<const Event> given,
                                        double tol = kPredictTol);

// ---------------------------------------------------------------------------
// Compatibility

struct CompatibilityReport {
  bool compatible = false;
  double commutator_residual = 0.0;  // ||EF - FE||_F
  double identity_residual = 0.0;    // max of the two total-probability identities
  double threshold = 0.0;
  bool commutator_test = false;
  bool identity_test = false;
  bool agree = false;
};

/// Runs both the commutator test and the E = FEF + F'EF', F = EFE + E'FE'
/// test. Boolean pairs are always compatible.
CompatibilityReport compatibility(const QuantumEvent& e, const QuantumEvent& f, double tol = kEventTol);
CompatibilityReport compatibility(const BooleanEvent& e, const BooleanEvent& f);
CompatibilityReport compatibility(const Event& e, const Event& f, double tol = kEventTol);

bool compatible(const QuantumEvent& e, const QuantumEvent& f, double tol = kEventTol);
bool compatible(const BooleanEvent& e, const BooleanEvent& f);
bool compatible(const Event& e, const Event& f, double tol = kEventTol);

// ---------------------------------------------------------------------------
// Atoms

/// The unique state with probability 1 on the atom. Throws NotAtom.
DensityState atom_state(const QuantumEvent& d);
ClassicalState atom_state(const BooleanEvent& d);
State atom_state(const Event& d);

/// |<eta|xi>|^2
double rank_one_transition(const StateVector& xi, const StateVector& eta);

/// |P(E|F) - P(F|E)| <= tol for two atoms. Throws NotAtom.
bool atom_symmetry_check(const QuantumEvent& e, const QuantumEvent& f, double tol = 1e-10);

bool is_dispersion_free(const State& mu, std::span<const Event> events, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Finite tables of event values

struct TableEntry {
  std::string name;
  QuantumEvent event;
  double value;
};

/// A map from a finite list of projections to [0, 1].
class TableState {
 public:
  TableState() = default;
  explicit TableState(std::vector<TableEntry> entries) : entries_(std::move(entries)) {}

  const std::vector<TableEntry>& entries() const noexcept { return entries_; }
  double value(const std::string& name) const;

 private:
  std::vector<TableEntry> entries_;
};

struct TableCheck {
  bool ok = true;
  std::vector<std::string> violations;
};

/// State axioms restricted to the listed events: values in [0,1], the unit
/// listed with value 1, closure under complement with v(X) + v(X') = 1, and
/// additivity on every orthogonal pair whose sum is listed.
TableCheck validate_table_state(const TableState& table, double tol = 1e-12);

/// Conditional-probability constraint of `table` for `mu` under `cond`:
/// v(X) = mu(X)/mu(cond) for every listed X ≺ cond.
TableCheck validate_conditional(const TableState& table, const DensityState& mu,
                                const QuantumEvent& cond, double tol = 1e-12);

struct QubitDemo {
  QuantumEvent e;
  QuantumEvent g;
  DensityState initial;
  TableState lueders;  // values of the Lüders-conditioned state
  TableState flipped;  // same, with the values on G and G' exchanged
  bool special_case = false;  // lueders value on G was 1/2, so G was forced to 1
  TableCheck lueders_state;
  TableCheck flipped_state;
  TableCheck lueders_conditional;
  TableCheck flipped_conditional;
  bool differ = false;
};

/// Two distinct tables on {0, 1, E, E', G, G'} that both qualify as the
/// conditional probability of `initial` under E. E and G must be non-commuting
/// rank-one projections on C^2.
QubitDemo qubit_nonuniqueness_demo(const StateVector& e, const StateVector& g,
                                   const DensityState& initial);
/// E = P(1,0), G = P((1,1)/sqrt 2), initial state I/2.
QubitDemo qubit_nonuniqueness_demo();

}  // namespace ucp
