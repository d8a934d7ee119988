#include "ucp/events.hpp"

#include <algorithm>
#include <set>

#include "ucp/error.hpp"

namespace ucp {

namespace {

void require_same_space(const BooleanEvent& e, const BooleanEvent& f) {
  if (!(e.space() == f.space())) {
    throw Error(ErrorKind::AlgebraMismatch, "events belong to different sample spaces");
  }
}

void require_same_dim(const QuantumEvent& e, const QuantumEvent& f) {
  if (e.dim() != f.dim()) {
    throw Error(ErrorKind::AlgebraMismatch, "projections act on spaces of dimension " +
                                                std::to_string(e.dim()) + " and " +
                                                std::to_string(f.dim()));
  }
}

double scale(const QuantumEvent& e, const QuantumEvent& f) {
  return std::max({1.0, frobenius_norm(e.matrix()), frobenius_norm(f.matrix())});
}

}  // namespace

// ---------------------------------------------------------------------------
// SampleSpace

SampleSpace::SampleSpace(std::size_t size) : size_(size) {
  if (size == 0) throw Error(ErrorKind::InvalidValue, "sample space must have at least one point");
}

SampleSpace::SampleSpace(std::vector<std::string> labels)
    : size_(labels.size()), labels_(std::move(labels)) {
  if (size_ == 0) throw Error(ErrorKind::InvalidValue, "sample space must have at least one point");
  std::set<std::string> seen(labels_.begin(), labels_.end());
  if (seen.size() != labels_.size()) {
    throw Error(ErrorKind::InvalidValue, "sample point labels must be distinct");
  }
}

std::optional<std::size_t> SampleSpace::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::string SampleSpace::name_of(std::size_t i) const {
  return labels_.empty() ? std::to_string(i) : labels_.at(i);
}

// ---------------------------------------------------------------------------
// BooleanEvent

BooleanEvent::BooleanEvent(std::shared_ptr<const SampleSpace> space, std::vector<bool> members)
    : space_(std::move(space)), members_(std::move(members)) {
  if (!space_) throw Error(ErrorKind::InvalidValue, "event needs a sample space");
  if (members_.size() != space_->size()) {
    throw Error(ErrorKind::DimensionMismatch, "membership bitset has length " +
                                                  std::to_string(members_.size()) +
                                                  ", sample space has " +
                                                  std::to_string(space_->size()) + " points");
  }
}

BooleanEvent BooleanEvent::from_indices(std::shared_ptr<const SampleSpace> space,
                                        const std::vector<std::size_t>& indices) {
  const std::size_t n = space ? space->size() : 0;
  std::vector<bool> bits(n, false);
  for (std::size_t i : indices) {
    if (i >= n) {
      throw Error(ErrorKind::DimensionMismatch,
                  "sample point " + std::to_string(i) + " outside space of size " + std::to_string(n));
    }
    bits[i] = true;
  }
  return BooleanEvent(std::move(space), std::move(bits));
}

std::size_t BooleanEvent::count() const {
  return static_cast<std::size_t>(std::count(members_.begin(), members_.end(), true));
}

std::vector<std::size_t> BooleanEvent::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (members_[i]) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// Boolean operations

bool orthogonal(const BooleanEvent& e, const BooleanEvent& f) {
  require_same_space(e, f);
  for (std::size_t i = 0; i < e.members().size(); ++i)
    if (e.members()[i] && f.members()[i]) return false;
  return true;
}

BooleanEvent oplus(const BooleanEvent& e, const BooleanEvent& f) {
  if (!orthogonal(e, f)) throw Error(ErrorKind::NotOrthogonal, "sum needs disjoint events");
  std::vector<bool> bits = e.members();
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = bits[i] || f.members()[i];
  return BooleanEvent(e.space_ptr(), std::move(bits));
}

BooleanEvent complement(const BooleanEvent& e) {
  std::vector<bool> bits = e.members();
  bits.flip();
  return BooleanEvent(e.space_ptr(), std::move(bits));
}

bool below(const BooleanEvent& e, const BooleanEvent& f) {
  require_same_space(e, f);
  for (std::size_t i = 0; i < e.members().size(); ++i)
    if (e.members()[i] && !f.members()[i]) return false;
  return true;
}

bool is_atom(const BooleanEvent& e) { return e.count() == 1; }

bool is_zero(const BooleanEvent& e) { return e.count() == 0; }

bool equal(const BooleanEvent& e, const BooleanEvent& f) {
  require_same_space(e, f);
  return e.members() == f.members();
}

BooleanEvent intersect(const BooleanEvent& e, const BooleanEvent& f) {
  require_same_space(e, f);
  std::vector<bool> bits = e.members();
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = bits[i] && f.members()[i];
  return BooleanEvent(e.space_ptr(), std::move(bits));
}

std::optional<BooleanEvent> difference(const BooleanEvent& f, const BooleanEvent& e) {
  if (!below(e, f)) return std::nullopt;
  return intersect(f, complement(e));
}

// ---------------------------------------------------------------------------
// Projection operations

bool orthogonal(const QuantumEvent& e, const QuantumEvent& f, double tol) {
  require_same_dim(e, f);
  return frobenius_norm(matmul(e.matrix(), f.matrix())) <= tol * scale(e, f);
}

QuantumEvent oplus(const QuantumEvent& e, const QuantumEvent& f, double tol) {
  if (!orthogonal(e, f, tol)) {
    throw Error(ErrorKind::NotOrthogonal, "sum needs orthogonal projections (EF != 0)");
  }
  // E + F deviates from idempotency by EF + FE, already bounded by tol.
  return QuantumEvent(Projection(e.op() + f.op(), std::max(Tolerances{}.idempotent, 4.0 * tol)));
}

QuantumEvent complement(const QuantumEvent& e) {
  return QuantumEvent(Projection(HermitianOperator::identity(e.dim()) - e.op()));
}

bool below(const QuantumEvent& e, const QuantumEvent& f, double tol) {
  require_same_dim(e, f);
  return frobenius_norm(matmul(e.matrix(), f.matrix()) - e.matrix()) <= tol * scale(e, f);
}

bool is_atom(const QuantumEvent& e) { return e.rank() == 1; }

bool is_zero(const QuantumEvent& e, double tol) { return frobenius_norm(e.matrix()) <= tol; }

bool equal(const QuantumEvent& e, const QuantumEvent& f, double tol) {
  require_same_dim(e, f);
  return frobenius_norm(e.matrix() - f.matrix()) <= tol * scale(e, f);
}

std::optional<QuantumEvent> difference(const QuantumEvent& f, const QuantumEvent& e, double tol) {
  require_same_dim(e, f);
  if (!below(e, f, tol)) return std::nullopt;
  try {
    return QuantumEvent(Projection(f.op() - e.op(), std::max(Tolerances{}.idempotent, 4.0 * tol)));
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::NotProjection) throw;
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// BooleanAlgebra

BooleanAlgebra::BooleanAlgebra(SampleSpace space)
    : space_(std::make_shared<const SampleSpace>(std::move(space))) {}

BooleanEvent BooleanAlgebra::zero() const {
  return BooleanEvent(space_, std::vector<bool>(space_->size(), false));
}

BooleanEvent BooleanAlgebra::one() const {
  return BooleanEvent(space_, std::vector<bool>(space_->size(), true));
}

BooleanEvent BooleanAlgebra::event(const std::vector<std::size_t>& indices) const {
  return BooleanEvent::from_indices(space_, indices);
}

BooleanEvent BooleanAlgebra::random_event(random::Engine& rng) const {
  std::bernoulli_distribution coin(0.5);
  std::vector<bool> bits(space_->size());
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = coin(rng);
  return BooleanEvent(space_, std::move(bits));
}

std::vector<BooleanEvent> BooleanAlgebra::random_partition(random::Engine& rng,
                                                           std::size_t blocks) const {
  std::uniform_int_distribution<std::size_t> pick(0, blocks - 1);
  std::vector<std::vector<bool>> bits(blocks, std::vector<bool>(space_->size(), false));
  for (std::size_t i = 0; i < space_->size(); ++i) bits[pick(rng)][i] = true;
  std::vector<BooleanEvent> out;
  for (auto& b : bits) out.emplace_back(space_, std::move(b));
  return out;
}

// ---------------------------------------------------------------------------
// QuantumAlgebra

QuantumAlgebra::QuantumAlgebra(std::size_t dim, double tol) : dim_(dim), tol_(tol) {
  if (dim == 0) throw Error(ErrorKind::InvalidValue, "Hilbert space dimension must be positive");
}

QuantumEvent QuantumAlgebra::zero() const { return QuantumEvent(Projection::zero(dim_)); }

QuantumEvent QuantumAlgebra::one() const { return QuantumEvent(Projection::identity(dim_)); }

QuantumEvent QuantumAlgebra::random_event(random::Engine& rng) const {
  std::uniform_int_distribution<std::size_t> rank(0, dim_);
  return QuantumEvent(random::projection(dim_, rank(rng), rng));
}

std::vector<QuantumEvent> QuantumAlgebra::random_partition(random::Engine& rng,
                                                           std::size_t blocks) const {
  const Matrix frame = random::unitary(dim_, rng);
  std::uniform_int_distribution<std::size_t> pick(0, blocks - 1);
  std::vector<std::vector<std::size_t>> cols(blocks);
  for (std::size_t c = 0; c < dim_; ++c) cols[pick(rng)].push_back(c);
  std::vector<QuantumEvent> out;
  for (const auto& c : cols) out.emplace_back(random::frame_projection(frame, c));
  return out;
}

// ---------------------------------------------------------------------------
// Kind-erased events

namespace {

template <class F>
auto visit_pair(const Event& e, const Event& f, F&& fn) {
  if (e.index() != f.index()) {
    throw Error(ErrorKind::AlgebraMismatch, "cannot mix Boolean events and projections");
  }
  if (const auto* be = std::get_if<BooleanEvent>(&e)) return fn(*be, std::get<BooleanEvent>(f));
  return fn(std::get<QuantumEvent>(e), std::get<QuantumEvent>(f));
}

}  // namespace

bool orthogonal(const Event& e, const Event& f) {
  return visit_pair(e, f, [](const auto& a, const auto& b) { return orthogonal(a, b); });
}

Event oplus(const Event& e, const Event& f) {
  return visit_pair(e, f, [](const auto& a, const auto& b) -> Event { return oplus(a, b); });
}

Event complement(const Event& e) {
  return std::visit([](const auto& a) -> Event { return complement(a); }, e);
}

bool below(const Event& e, const Event& f) {
  return visit_pair(e, f, [](const auto& a, const auto& b) { return below(a, b); });
}

bool is_atom(const Event& e) {
  return std::visit([](const auto& a) { return is_atom(a); }, e);
}

bool equal(const Event& e, const Event& f) {
  return visit_pair(e, f, [](const auto& a, const auto& b) { return equal(a, b); });
}

// ---------------------------------------------------------------------------
// EventAlgebra

Event EventAlgebra::zero() const {
  return std::visit([](const auto& a) -> Event { return a.zero(); }, alg_);
}

Event EventAlgebra::one() const {
  return std::visit([](const auto& a) -> Event { return a.one(); }, alg_);
}

void EventAlgebra::add(const std::string& name, Event event) {
  if (events_.contains(name)) {
    throw Error(ErrorKind::ValidationError, "event '" + name + "' is defined twice");
  }
  // Checking against the unit catches both kind and dimension mismatches.
  (void)equal(one(), event);
  events_.emplace(name, std::move(event));
}

const Event& EventAlgebra::at(const std::string& name) const {
  auto it = events_.find(name);
  if (it == events_.end()) throw Error(ErrorKind::ValidationError, "unknown event '" + name + "'");
  return it->second;
}

std::vector<std::string> EventAlgebra::warnings() const {
  std::vector<std::string> out;
  if (is_quantum() && !quantum().is_ucp_space()) {
    out.emplace_back("type I2: not a UCP space; conditional probabilities are not unique");
  }
  return out;
}

}  // namespace ucp
