#pragma once

// Event structures: finite Boolean lattices (subsets of a sample space) and
// complex projection lattices. Both provide zero/one, orthogonality, the
// partial sum of orthogonal events, complement and the induced order.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ucp/matrix.hpp"
#include "ucp/random.hpp"

namespace ucp {

/// Default relative tolerance for orthogonality, order and equality of
/// projections.
inline constexpr double kEventTol = 1e-9;

class SampleSpace {
 public:
  explicit SampleSpace(std::size_t size);
  explicit SampleSpace(std::vector<std::string> labels);

  std::size_t size() const noexcept { return size_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<std::size_t> index_of(const std::string& label) const;
  /// Label of point i, or its index when unlabeled.
  std::string name_of(std::size_t i) const;

  friend bool operator==(const SampleSpace&, const SampleSpace&) = default;

 private:
  std::size_t size_;
  std::vector<std::string> labels_;
};

class BooleanEvent {
 public:
  BooleanEvent(std::shared_ptr<const SampleSpace> space, std::vector<bool> members);
  static BooleanEvent from_indices(std::shared_ptr<const SampleSpace> space,
                                   const std::vector<std::size_t>& indices);

  const SampleSpace& space() const noexcept { return *space_; }
  const std::shared_ptr<const SampleSpace>& space_ptr() const noexcept { return space_; }
  const std::vector<bool>& members() const noexcept { return members_; }
  bool contains(std::size_t i) const { return members_.at(i); }
  std::size_t count() const;
  std::vector<std::size_t> indices() const;

  friend bool operator==(const BooleanEvent& a, const BooleanEvent& b) {
    return *a.space_ == *b.space_ && a.members_ == b.members_;
  }

 private:
  std::shared_ptr<const SampleSpace> space_;
  std::vector<bool> members_;
};

class QuantumEvent {
 public:
  explicit QuantumEvent(Projection proj) : proj_(std::move(proj)) {}

  const Projection& proj() const noexcept { return proj_; }
  const HermitianOperator& op() const noexcept { return proj_.op(); }
  const Matrix& matrix() const noexcept { return proj_.matrix(); }
  std::size_t dim() const noexcept { return proj_.dim(); }
  std::size_t rank() const noexcept { return proj_.rank(); }

 private:
  Projection proj_;
};

// Operations on Boolean events. Mixing events from different sample spaces
// throws AlgebraMismatch.
bool orthogonal(const BooleanEvent& e, const BooleanEvent& f);
BooleanEvent oplus(const BooleanEvent& e, const BooleanEvent& f);
BooleanEvent complement(const BooleanEvent& e);
bool below(const BooleanEvent& e, const BooleanEvent& f);
bool is_atom(const BooleanEvent& e);
bool is_zero(const BooleanEvent& e);
bool equal(const BooleanEvent& e, const BooleanEvent& f);
BooleanEvent intersect(const BooleanEvent& e, const BooleanEvent& f);
/// The D with e ⊥ D and e + D = f, if one exists.
std::optional<BooleanEvent> difference(const BooleanEvent& f, const BooleanEvent& e);

// Operations on projections. Mixing dimensions throws AlgebraMismatch.
// Residual tests are relative: ||.||_F <= tol * max(1, ||E||_F, ||F||_F).
bool orthogonal(const QuantumEvent& e, const QuantumEvent& f, double tol = kEventTol);
QuantumEvent oplus(const QuantumEvent& e, const QuantumEvent& f, double tol = kEventTol);
QuantumEvent complement(const QuantumEvent& e);
bool below(const QuantumEvent& e, const QuantumEvent& f, double tol = kEventTol);
bool is_atom(const QuantumEvent& e);
bool is_zero(const QuantumEvent& e, double tol = kEventTol);
bool equal(const QuantumEvent& e, const QuantumEvent& f, double tol = kEventTol);
std::optional<QuantumEvent> difference(const QuantumEvent& f, const QuantumEvent& e,
                                       double tol = kEventTol);

// ---------------------------------------------------------------------------
// Concrete orthospaces. Each knows its distinguished elements and how to
// draw random events for the axiom harness.

class BooleanAlgebra {
 public:
  using event_type = BooleanEvent;

  explicit BooleanAlgebra(SampleSpace space);

  const SampleSpace& space() const noexcept { return *space_; }
  const std::shared_ptr<const SampleSpace>& space_ptr() const noexcept { return space_; }

  BooleanEvent zero() const;
  BooleanEvent one() const;
  BooleanEvent event(const std::vector<std::size_t>& indices) const;

  bool orthogonal(const BooleanEvent& e, const BooleanEvent& f) const { return ucp::orthogonal(e, f); }
  BooleanEvent oplus(const BooleanEvent& e, const BooleanEvent& f) const { return ucp::oplus(e, f); }
  BooleanEvent complement(const BooleanEvent& e) const { return ucp::complement(e); }
  bool below(const BooleanEvent& e, const BooleanEvent& f) const { return ucp::below(e, f); }
  bool equal(const BooleanEvent& e, const BooleanEvent& f) const { return ucp::equal(e, f); }
  bool is_atom(const BooleanEvent& e) const { return ucp::is_atom(e); }
  std::optional<BooleanEvent> difference(const BooleanEvent& f, const BooleanEvent& e) const {
    return ucp::difference(f, e);
  }

  BooleanEvent random_event(random::Engine& rng) const;
  /// Partition of the whole space into `blocks` pairwise disjoint (possibly
  /// empty) events.
  std::vector<BooleanEvent> random_partition(random::Engine& rng, std::size_t blocks) const;

 private:
  std::shared_ptr<const SampleSpace> space_;
};

class QuantumAlgebra {
 public:
  using event_type = QuantumEvent;

  explicit QuantumAlgebra(std::size_t dim, double tol = kEventTol);

  std::size_t dim() const noexcept { return dim_; }
  double tol() const noexcept { return tol_; }

  /// The projection lattice of a 2-dimensional space (type I2) has no unique
  /// conditional probabilities; conditioning still works but is one of many
  /// admissible choices there.
  bool is_ucp_space() const noexcept { return dim_ != 2; }

  QuantumEvent zero() const;
  QuantumEvent one() const;

  bool orthogonal(const QuantumEvent& e, const QuantumEvent& f) const { return ucp::orthogonal(e, f, tol_); }
  QuantumEvent oplus(const QuantumEvent& e, const QuantumEvent& f) const { return ucp::oplus(e, f, tol_); }
  QuantumEvent complement(const QuantumEvent& e) const { return ucp::complement(e); }
  bool below(const QuantumEvent& e, const QuantumEvent& f) const { return ucp::below(e, f, tol_); }
  bool equal(const QuantumEvent& e, const QuantumEvent& f) const { return ucp::equal(e, f, tol_); }
  bool is_atom(const QuantumEvent& e) const { return ucp::is_atom(e); }
  std::optional<QuantumEvent> difference(const QuantumEvent& f, const QuantumEvent& e) const {
    return ucp::difference(f, e, tol_);
  }

  /// Projection of uniformly random rank onto columns of a fresh random
  /// unitary.
  QuantumEvent random_event(random::Engine& rng) const;
  /// Column subsets of one random frame, covering all columns.
  std::vector<QuantumEvent> random_partition(random::Engine& rng, std::size_t blocks) const;

 private:
  std::size_t dim_;
  double tol_;
};

// ---------------------------------------------------------------------------
// Kind-erased events and the named registry used by scenario files.

using Event = std::variant<BooleanEvent, QuantumEvent>;

bool orthogonal(const Event& e, const Event& f);
Event oplus(const Event& e, const Event& f);
Event complement(const Event& e);
bool below(const Event& e, const Event& f);
bool is_atom(const Event& e);
bool equal(const Event& e, const Event& f);

class EventAlgebra {
 public:
  explicit EventAlgebra(BooleanAlgebra alg) : alg_(std::move(alg)) {}
  explicit EventAlgebra(QuantumAlgebra alg) : alg_(std::move(alg)) {}

  bool is_boolean() const noexcept { return std::holds_alternative<BooleanAlgebra>(alg_); }
  bool is_quantum() const noexcept { return std::holds_alternative<QuantumAlgebra>(alg_); }
  const BooleanAlgebra& boolean() const { return std::get<BooleanAlgebra>(alg_); }
  const QuantumAlgebra& quantum() const { return std::get<QuantumAlgebra>(alg_); }

  Event zero() const;
  Event one() const;

  /// Registers an event; throws AlgebraMismatch if it belongs to another
  /// space and ValidationError on a duplicate name.
  void add(const std::string& name, Event event);
  bool contains(const std::string& name) const { return events_.contains(name); }
  const Event& at(const std::string& name) const;
  const std::map<std::string, Event>& events() const noexcept { return events_; }

  /// Human-readable flags about the algebra (e.g. the type I2 caveat).
  std::vector<std::string> warnings() const;

 private:
  std::variant<BooleanAlgebra, QuantumAlgebra> alg_;
  std::map<std::string, Event> events_;
};

}  // namespace ucp
