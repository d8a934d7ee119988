#include "ucp/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ucp/error.hpp"

namespace ucp {

namespace {

void require_same_space(const SampleSpace& a, const SampleSpace& b) {
  if (!(a == b)) throw Error(ErrorKind::AlgebraMismatch, "state and event live on different sample spaces");
}

void require_same_dim(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(ErrorKind::AlgebraMismatch, "state and event act on spaces of dimension " +
                                                std::to_string(a) + " and " + std::to_string(b));
  }
}

[[noreturn]] void kind_mismatch() {
  throw Error(ErrorKind::AlgebraMismatch, "cannot mix classical and quantum objects");
}

double clamp_unit(double p) { return std::clamp(p, 0.0, 1.0); }

/// Certifies A = sB with s = trace(A)/trace(B).
PredictabilityResult certify(const HermitianOperator& a, const HermitianOperator& b, double tol) {
  PredictabilityResult r;
  const double s = a.trace() / b.trace();
  r.residual = frobenius_norm(a - s * b);
  r.threshold = tol * std::max(1.0, frobenius_norm(b));
  r.s = s;
  r.predictable = r.residual <= r.threshold;
  r.near_miss = !r.predictable && r.residual <= 10.0 * r.threshold;
  if (s < 0.0 || s > 1.0) {
    if (s >= -tol && s <= 1.0 + tol) {
      r.s = clamp_unit(s);
    } else {
      r.predictable = false;
    }
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// ClassicalState

ClassicalState::ClassicalState(std::shared_ptr<const SampleSpace> space, std::vector<double> weights)
    : space_(std::move(space)), weights_(std::move(weights)) {
  if (!space_) throw Error(ErrorKind::InvalidValue, "classical state needs a sample space");
  if (weights_.size() != space_->size()) {
    throw Error(ErrorKind::DimensionMismatch, "state has " + std::to_string(weights_.size()) +
                                                  " weights for " + std::to_string(space_->size()) +
                                                  " sample points");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorKind::InvalidValue, "state weights must be finite and non-negative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorKind::InvalidValue, "state weights sum to " + std::to_string(total) + ", expected 1");
  }
}

ClassicalState ClassicalState::uniform(std::shared_ptr<const SampleSpace> space) {
  const std::size_t n = space->size();
  return ClassicalState(std::move(space), std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

ClassicalState ClassicalState::point_mass(std::shared_ptr<const SampleSpace> space, std::size_t point) {
  std::vector<double> w(space->size(), 0.0);
  w.at(point) = 1.0;
  return ClassicalState(std::move(space), std::move(w));
}

// ---------------------------------------------------------------------------
// DensityState

DensityState::DensityState(HermitianOperator rho) : rho_(std::move(rho)) {
  const double tr = rho_.trace();
  if (std::abs(tr - 1.0) > 1e-10) {
    throw Error(ErrorKind::InvalidValue, "density operator has trace " + std::to_string(tr) + ", expected 1");
  }
  const double lo = min_eigenvalue(rho_);
  if (lo < -1e-10) {
    throw Error(ErrorKind::InvalidValue,
                "density operator is not positive semidefinite (min eigenvalue " + std::to_string(lo) + ")");
  }
}

DensityState DensityState::maximally_mixed(std::size_t n) {
  return DensityState((1.0 / static_cast<double>(n)) * HermitianOperator::identity(n));
}

DensityState DensityState::pure(const StateVector& v) { return DensityState(v.projector().op()); }

// ---------------------------------------------------------------------------
// prob / condition

double prob(const ClassicalState& mu, const BooleanEvent& e) {
  require_same_space(mu.space(), e.space());
  double p = 0.0;
  for (std::size_t i = 0; i < mu.weights().size(); ++i)
    if (e.members()[i]) p += mu.weights()[i];
  return clamp_unit(p);
}

double prob(const DensityState& mu, const QuantumEvent& e) {
  require_same_dim(mu.dim(), e.dim());
  // trace(rho E) = sum_ij rho_ij E_ji, without forming the product.
  const Matrix& r = mu.rho().matrix();
  const Matrix& p = e.matrix();
  double t = 0.0;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) t += (r(i, j) * p(j, i)).real();
  return clamp_unit(t);
}

double prob(const State& mu, const Event& e) {
  if (mu.index() != e.index()) kind_mismatch();
  if (const auto* c = std::get_if<ClassicalState>(&mu)) return prob(*c, std::get<BooleanEvent>(e));
  return prob(std::get<DensityState>(mu), std::get<QuantumEvent>(e));
}

ClassicalState condition(const ClassicalState& mu, const BooleanEvent& e, double tol) {
  const double p = prob(mu, e);
  if (p <= tol) {
    throw Error(ErrorKind::ZeroProbabilityCondition,
                "cannot condition on an event of probability " + std::to_string(p));
  }
  std::vector<double> w(mu.weights().size(), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (e.members()[i]) {
      w[i] = mu.weights()[i] / p;
      total += w[i];
    }
  }
  for (double& x : w) x /= total;
  return ClassicalState(mu.space_ptr(), std::move(w));
}

DensityState condition(const DensityState& mu, const QuantumEvent& e, double tol) {
  const double p = prob(mu, e);
  if (p <= tol) {
    throw Error(ErrorKind::ZeroProbabilityCondition,
                "cannot condition on an event of probability " + std::to_string(p));
  }
  HermitianOperator updated = quadratic_triple(e.op(), mu.rho());
  return DensityState((1.0 / updated.trace()) * updated, DensityState::Trusted{});
}

State condition(const State& mu, const Event& e, double tol) {
  if (mu.index() != e.index()) kind_mismatch();
  if (const auto* c = std::get_if<ClassicalState>(&mu)) return condition(*c, std::get<BooleanEvent>(e), tol);
  return condition(std::get<DensityState>(mu), std::get<QuantumEvent>(e), tol);
}

namespace {

template <class S, class E>
S fold_conditions(const S& mu, std::span<const E> events, double tol) {
  S current = mu;
  for (std::size_t k = 0; k < events.size(); ++k) {
    try {
      current = condition(current, events[k], tol);
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::ZeroProbabilityCondition) throw;
      throw SequenceError(ErrorKind::ZeroProbabilityCondition, k,
                          "conditioning step " + std::to_string(k) + ": " + err.what());
    }
  }
  return current;
}

}  // namespace

ClassicalState condition_seq(const ClassicalState& mu, std::span<const BooleanEvent> events, double tol) {
  return fold_conditions(mu, events, tol);
}

DensityState condition_seq(const DensityState& mu, std::span<const QuantumEvent> events, double tol) {
  return fold_conditions(mu, events, tol);
}

State condition_seq(const State& mu, std::span<const Event> events, double tol) {
  return fold_conditions(mu, events, tol);
}

// ---------------------------------------------------------------------------
// Predictability

PredictabilityResult predictability(const QuantumEvent& target, const QuantumEvent& given, double tol) {
  if (target.dim() != given.dim()) require_same_dim(target.dim(), given.dim());
  if (given.rank() == 0) throw Error(ErrorKind::ZeroEvent, "conditioning event is zero");
  return certify(quadratic_triple(given.op(), target.op()), given.op(), tol);
}

PredictabilityResult predictability(const BooleanEvent& target, const BooleanEvent& given, double tol) {
  require_same_space(target.space(), given.space());
  const std::size_t size = given.count();
  if (size == 0) throw Error(ErrorKind::ZeroEvent, "conditioning event is empty");
  const std::size_t hits = intersect(given, target).count();
  // The projection formula on diagonal 0/1 matrices: FEF - sF has `hits`
  // entries equal to 1 - s and `size - hits` entries equal to -s.
  const double s = static_cast<double>(hits) / static_cast<double>(size);
  PredictabilityResult r;
  r.s = s;
  r.residual = std::sqrt(static_cast<double>(hits) * (1.0 - s) * (1.0 - s) +
                         static_cast<double>(size - hits) * s * s);
  r.threshold = tol * std::max(1.0, std::sqrt(static_cast<double>(size)));
  r.predictable = hits == 0 || hits == size;
  r.near_miss = !r.predictable && r.residual <= 10.0 * r.threshold;
  return r;
}

PredictabilityResult predictability(const Event& target, const Event& given, double tol) {
  if (target.index() != given.index()) kind_mismatch();
  if (const auto* b = std::get_if<BooleanEvent>(&target)) {
    return predictability(*b, std::get<BooleanEvent>(given), tol);
  }
  return predictability(std::get<QuantumEvent>(target), std::get<QuantumEvent>(given), tol);
}

PredictabilityResult predictability_seq(const QuantumEvent& target, std::span<const QuantumEvent> given,
                                        double tol) {
  if (given.empty()) throw Error(ErrorKind::EmptyInput, "predictability needs at least one conditioning event");
  Matrix m = Matrix::identity(target.dim());
  for (std::size_t k = 0; k < given.size(); ++k) {
    require_same_dim(target.dim(), given[k].dim());
    if (given[k].rank() == 0) {
      throw SequenceError(ErrorKind::ZeroEvent, k, "conditioning event " + std::to_string(k) + " is zero");
    }
    m = matmul(m, given[k].matrix());
  }
  const Matrix m_adj = m.adjoint();
  const auto a = HermitianOperator::hermitian_part(matmul(matmul(m, target.matrix()), m_adj));
  const auto b = HermitianOperator::hermitian_part(matmul(m, m_adj));
  if (b.trace() <= tol) {
    throw Error(ErrorKind::ImpossibleSequence,
                "no state can pass this sequence of observations (trace F1..Fn..F1 = " +
                    std::to_string(b.trace()) + ")");
  }
  return certify(a, b, tol);
}

PredictabilityResult predictability_seq(const BooleanEvent& target, std::span<const BooleanEvent> given,
                                        double tol) {
  if (given.empty()) throw Error(ErrorKind::EmptyInput, "predictability needs at least one conditioning event");
  BooleanEvent meet = given.front();
  for (std::size_t k = 0; k < given.size(); ++k) {
    if (given[k].count() == 0) {
      throw SequenceError(ErrorKind::ZeroEvent, k, "conditioning event " + std::to_string(k) + " is empty");
    }
    meet = intersect(meet, given[k]);
  }
  if (meet.count() == 0) {
    throw Error(ErrorKind::ImpossibleSequence, "conditioning events have empty intersection");
  }
  return predictability(target, meet, tol);
}

PredictabilityResult predictability_seq(const Event& target, std::span<const Event> given, double tol) {
  if (given.empty()) throw Error(ErrorKind::EmptyInput, "predictability needs at least one conditioning event");
  if (std::holds_alternative<BooleanEvent>(target)) {
    std::vector<BooleanEvent> seq;
    for (const auto& g : given) {
      if (!std::holds_alternative<BooleanEvent>(g)) kind_mismatch();
      seq.push_back(std::get<BooleanEvent>(g));
    }
    return predictability_seq(std::get<BooleanEvent>(target), seq, tol);
  }
  std::vector<QuantumEvent> seq;
  for (const auto& g : given) {
    if (!std::holds_alternative<QuantumEvent>(g)) kind_mismatch();
    seq.push_back(std::get<QuantumEvent>(g));
  }
  return predictability_seq(std::get<QuantumEvent>(target), seq, tol);
}

// ---------------------------------------------------------------------------
// Compatibility

CompatibilityReport compatibility(const QuantumEvent& e, const QuantumEvent& f, double tol) {
  require_same_dim(e.dim(), f.dim());
  const Matrix& em = e.matrix();
  const Matrix& fm = f.matrix();
  const QuantumEvent ec = complement(e);
  const QuantumEvent fc = complement(f);

  CompatibilityReport r;
  r.commutator_residual = frobenius_norm(matmul(em, fm) - matmul(fm, em));
  const double id_e =
      frobenius_norm(e.op() - quadratic_triple(f.op(), e.op()) - quadratic_triple(fc.op(), e.op()));
  const double id_f =
      frobenius_norm(f.op() - quadratic_triple(e.op(), f.op()) - quadratic_triple(ec.op(), f.op()));
  r.identity_residual = std::max(id_e, id_f);
  r.threshold = tol * std::max({1.0, frobenius_norm(em), frobenius_norm(fm)});
  r.commutator_test = r.commutator_residual <= r.threshold;
  r.identity_test = r.identity_residual <= r.threshold;
  r.agree = r.commutator_test == r.identity_test;
  r.compatible = r.commutator_test;
  return r;
}

CompatibilityReport compatibility(const BooleanEvent& e, const BooleanEvent& f) {
  require_same_space(e.space(), f.space());
  CompatibilityReport r;
  r.compatible = r.commutator_test = r.identity_test = r.agree = true;
  return r;
}

CompatibilityReport compatibility(const Event& e, const Event& f, double tol) {
  if (e.index() != f.index()) kind_mismatch();
  if (const auto* b = std::get_if<BooleanEvent>(&e)) return compatibility(*b, std::get<BooleanEvent>(f));
  return compatibility(std::get<QuantumEvent>(e), std::get<QuantumEvent>(f), tol);
}

bool compatible(const QuantumEvent& e, const QuantumEvent& f, double tol) {
  return compatibility(e, f, tol).compatible;
}

bool compatible(const BooleanEvent& e, const BooleanEvent& f) { return compatibility(e, f).compatible; }

bool compatible(const Event& e, const Event& f, double tol) { return compatibility(e, f, tol).compatible; }

// ---------------------------------------------------------------------------
// Atoms

DensityState atom_state(const QuantumEvent& d) {
  if (!is_atom(d)) {
    throw Error(ErrorKind::NotAtom, "event of rank " + std::to_string(d.rank()) + " is not an atom");
  }
  return DensityState(d.op(), DensityState::Trusted{});
}

ClassicalState atom_state(const BooleanEvent& d) {
  if (!is_atom(d)) {
    throw Error(ErrorKind::NotAtom, "event with " + std::to_string(d.count()) + " points is not an atom");
  }
  return ClassicalState::point_mass(d.space_ptr(), d.indices().front());
}

State atom_state(const Event& d) {
  return std::visit([](const auto& a) -> State { return atom_state(a); }, d);
}

double rank_one_transition(const StateVector& xi, const StateVector& eta) {
  if (xi.dim() != eta.dim()) throw Error(ErrorKind::DimensionMismatch, "vectors have different dimensions");
  return std::norm(inner(eta, xi));
}

bool atom_symmetry_check(const QuantumEvent& e, const QuantumEvent& f, double tol) {
  if (!is_atom(e) || !is_atom(f)) throw Error(ErrorKind::NotAtom, "atom symmetry needs two rank-one projections");
  return std::abs(predictability(e, f).s - predictability(f, e).s) <= tol;
}

bool is_dispersion_free(const State& mu, std::span<const Event> events, double tol) {
  return std::all_of(events.begin(), events.end(), [&](const Event& e) {
    const double p = prob(mu, e);
    return p <= tol || p >= 1.0 - tol;
  });
}

// ---------------------------------------------------------------------------
// Tables

double TableState::value(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return e.value;
  throw Error(ErrorKind::InvalidValue, "table has no event named '" + name + "'");
}

TableCheck validate_table_state(const TableState& table, double tol) {
  TableCheck check;
  auto fail = [&](std::string msg) {
    check.ok = false;
    check.violations.push_back(std::move(msg));
  };
  const auto& entries = table.entries();
  if (entries.empty()) {
    fail("table is empty");
    return check;
  }
  const QuantumEvent one(Projection::identity(entries.front().event.dim()));

  auto find = [&](const QuantumEvent& x) -> const TableEntry* {
    for (const auto& e : entries)
      if (equal(e.event, x)) return &e;
    return nullptr;
  };

  for (const auto& e : entries) {
    if (!(e.value >= -tol && e.value <= 1.0 + tol)) fail("value of " + e.name + " outside [0,1]");
  }
  if (const auto* u = find(one); u == nullptr) {
    fail("unit event is not listed");
  } else if (std::abs(u->value - 1.0) > tol) {
    fail("value of the unit event is not 1");
  }
  for (const auto& e : entries) {
    const auto* c = find(complement(e.event));
    if (c == nullptr) {
      fail("complement of " + e.name + " is not listed");
    } else if (std::abs(e.value + c->value - 1.0) > tol) {
      fail("v(" + e.name + ") + v(" + c->name + ") != 1");
    }
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    for (std::size_t j = i; j < entries.size(); ++j) {
      const auto& a = entries[i];
      const auto& b = entries[j];
      if (!orthogonal(a.event, b.event)) continue;
      const auto* sum = find(oplus(a.event, b.event));
      if (sum != nullptr && std::abs(sum->value - a.value - b.value) > tol) {
        fail("additivity fails on " + a.name + " + " + b.name);
      }
    }
  }
  return check;
}

TableCheck validate_conditional(const TableState& table, const DensityState& mu, const QuantumEvent& cond,
                                double tol) {
  TableCheck check;
  const double p = prob(mu, cond);
  if (p <= kConditionTol) {
    check.ok = false;
    check.violations.emplace_back("conditioning event has probability zero");
    return check;
  }
  for (const auto& e : table.entries()) {
    if (!below(e.event, cond)) continue;
    const double expected = prob(mu, e.event) / p;
    if (std::abs(e.value - expected) > tol) {
      check.ok = false;
      check.violations.push_back("v(" + e.name + ") = " + std::to_string(e.value) + " but mu(" + e.name +
                                 ")/mu(E) = " + std::to_string(expected));
    }
  }
  return check;
}

QubitDemo qubit_nonuniqueness_demo(const StateVector& e_vec, const StateVector& g_vec,
                                   const DensityState& initial) {
  if (e_vec.dim() != 2 || g_vec.dim() != 2 || initial.dim() != 2) {
    throw Error(ErrorKind::DimensionMismatch, "the qubit construction needs vectors and a state on C^2");
  }
  const QuantumEvent e(e_vec.projector());
  const QuantumEvent g(g_vec.projector());
  if (compatible(e, g)) {
    throw Error(ErrorKind::InvalidValue, "E and G must not commute (G would coincide with E or E')");
  }
  const QuantumAlgebra alg(2);
  const DensityState conditioned = condition(initial, e);

  std::vector<TableEntry> base = {
      {"0", alg.zero(), 0.0},  {"1", alg.one(), 0.0},           {"E", e, 0.0},
      {"E'", complement(e), 0.0}, {"G", g, 0.0}, {"G'", complement(g), 0.0},
  };
  for (auto& entry : base) entry.value = prob(conditioned, entry.event);

  std::vector<TableEntry> flipped = base;
  bool special = false;
  for (auto& entry : flipped) {
    if (entry.name != "G" && entry.name != "G'") continue;
    if (std::abs(base[4].value - 0.5) <= 1e-12) {
      special = true;
      entry.value = entry.name == "G" ? 1.0 : 0.0;
    } else {
      entry.value = 1.0 - entry.value;
    }
  }

  TableState lueders(std::move(base));
  TableState other(std::move(flipped));
  bool differ = false;
  for (std::size_t i = 0; i < lueders.entries().size(); ++i) {
    if (std::abs(lueders.entries()[i].value - other.entries()[i].value) > 1e-12) differ = true;
  }
  return QubitDemo{
      .e = e,
      .g = g,
      .initial = initial,
      .lueders = lueders,
      .flipped = other,
      .special_case = special,
      .lueders_state = validate_table_state(lueders),
      .flipped_state = validate_table_state(other),
      .lueders_conditional = validate_conditional(lueders, initial, e),
      .flipped_conditional = validate_conditional(other, initial, e),
      .differ = differ,
  };
}

QubitDemo qubit_nonuniqueness_demo() {
  const double h = 1.0 / std::sqrt(2.0);
  return qubit_nonuniqueness_demo(StateVector({1.0, 0.0}), StateVector({h, h}),
                                  DensityState::maximally_mixed(2));
}

}  // namespace ucp
