#include "ucp/query.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "ucp/axioms.hpp"
#include "ucp/error.hpp"
#include "ucp/interference.hpp"
#include "ucp/random.hpp"
#include "ucp/sampler.hpp"

namespace ucp::io {

namespace {

std::vector<std::string> names_of(const Json& j) {
  if (j.is_string()) return {j.get<std::string>()};
  return j.get<std::vector<std::string>>();
}

std::vector<Event> events_of(const Scenario& sc, const Json& j) {
  std::vector<Event> out;
  for (const auto& n : names_of(j)) out.push_back(sc.algebra.at(n));
  return out;
}

Json state_to_json(const State& s) {
  if (const auto* c = std::get_if<ClassicalState>(&s)) return {{"weights", c->weights()}};
  return {{"density", matrix_to_json(std::get<DensityState>(s).rho().matrix())}};
}

Json predictability_to_json(const PredictabilityResult& r) {
  return {{"predictable", r.predictable},
          {"s", r.s},
          {"residual", r.residual},
          {"threshold", r.threshold},
          {"near_miss", r.near_miss}};
}

Json chain_to_json(const ChainResult& r) {
  Json counts = Json::object();
  for (const auto& [path, n] : r.outcome_counts) counts[path] = n;
  Json out = {{"outcome_counts", counts},
              {"trials", r.trials},
              {"all_yes_count", r.all_yes_count},
              {"final_event_yes_count", r.final_event_yes_count},
              {"empirical_p", r.empirical_p},
              {"std_error", r.std_error},
              {"predicted_p", nullptr}};
  if (r.predicted_p) out["predicted_p"] = *r.predicted_p;
  return out;
}

Json axioms_to_json(const AxiomReport& rep, std::size_t budget, std::uint64_t seed) {
  Json tallies = Json::array();
  for (const auto& t : rep.tallies) {
    tallies.push_back({{"axiom", t.name}, {"trials", t.trials}, {"failures", t.failures}, {"notes", t.notes}});
  }
  return {{"ok", rep.ok()}, {"budget", budget}, {"seed", seed}, {"tallies", tallies}};
}

Json run_condition(const Scenario& sc, const Json& q, const RunOptions& opts) {
  const State& mu = sc.state(q.at("state").get<std::string>());
  const auto given = events_of(sc, q.at("given"));
  const State conditioned = condition_seq(mu, given, opts.tol);

  double reach = 1.0;
  State step = mu;
  for (const auto& g : given) {
    reach *= prob(step, g);
    step = condition(step, g, opts.tol);
  }

  Json probs = Json::object();
  if (auto it = q.find("report"); it != q.end()) {
    for (const auto& n : names_of(*it)) probs[n] = prob(conditioned, sc.algebra.at(n));
  } else {
    for (const auto& [n, e] : sc.algebra.events()) probs[n] = prob(conditioned, e);
  }
  return {{"given", names_of(q.at("given"))},
          {"sequence_probability", reach},
          {"probabilities", probs},
          {"state", state_to_json(conditioned)}};
}

Json run_axioms(const Scenario& sc, const Json& q, const RunOptions& opts) {
  const std::size_t budget = q.value("budget", std::size_t{1000});
  const std::uint64_t seed = opts.seed_set ? opts.seed : q.value("seed", opts.seed);
  const AxiomReport rep = sc.algebra.is_boolean() ? verify_orthospace_axioms(sc.algebra.boolean(), budget, seed)
                                                  : verify_orthospace_axioms(sc.algebra.quantum(), budget, seed);
  return axioms_to_json(rep, budget, seed);
}

Json run_sample(const Scenario& sc, const Json& q, const RunOptions& opts) {
  SamplerConfig cfg;
  cfg.seed = opts.seed_set ? opts.seed : q.value("seed", opts.seed);
  cfg.trials = opts.trials_set ? opts.trials : q.value("trials", opts.trials);
  cfg.tol = opts.tol;
  cfg.threads = opts.threads;
  const State& mu = sc.state(q.at("state").get<std::string>());
  const auto tests = events_of(sc, q.at("tests"));
  const Event& fin = sc.algebra.at(q.at("final").get<std::string>());
  Json out = chain_to_json(sample_chain(mu, tests, fin, cfg));
  out["seed"] = cfg.seed;
  return out;
}

Json run_interference(const Scenario& sc, const Json& q, const RunOptions& opts) {
  auto quantum = [&](const char* key) {
    const Event& e = sc.algebra.at(q.at(key).get<std::string>());
    const auto* p = std::get_if<QuantumEvent>(&e);
    if (p == nullptr) throw Error(ErrorKind::AlgebraMismatch, "interference needs projections");
    return *p;
  };
  const auto r = interference_decomposition(quantum("atom"), quantum("path1"), quantum("path2"),
                                            quantum("detector"), opts.tol);
  return {{"p_total", r.p_total},
          {"term1", r.term1},
          {"term2", r.term2},
          {"cross", r.cross},
          {"classical_sum", r.classical_sum()},
          {"p_e1_given_d", r.p_e1_given_d},
          {"p_e2_given_d", r.p_e2_given_d},
          {"p_esum_given_d", r.p_esum_given_d},
          {"path1_blocked", r.path1_blocked},
          {"path2_blocked", r.path2_blocked},
          {"identity_residual", r.identity_residual}};
}

}  // namespace

Json run_query(const Scenario& sc, const Json& q, const RunOptions& opts) {
  if (q.is_null()) throw Error(ErrorKind::ValidationError, "query: scenario has no query");
  const std::string kind = q.at("kind").get<std::string>();
  Json result;
  if (kind == "prob") {
    result = {{"probability", prob(sc.state(q.at("state").get<std::string>()),
                                   sc.algebra.at(q.at("event").get<std::string>()))}};
  } else if (kind == "condition" || kind == "condition_seq") {
    result = run_condition(sc, q, opts);
  } else if (kind == "predictability") {
    const Event& target = sc.algebra.at(q.at("target").get<std::string>());
    const auto given = events_of(sc, q.at("given"));
    result = predictability_to_json(q.at("given").is_string() ? predictability(target, given.front(), opts.tol)
                                                              : predictability_seq(target, given, opts.tol));
  } else if (kind == "compatible") {
    const auto r = compatibility(sc.algebra.at(q.at("a").get<std::string>()),
                                 sc.algebra.at(q.at("b").get<std::string>()), opts.tol);
    result = {{"compatible", r.compatible},
              {"commutator_residual", r.commutator_residual},
              {"identity_residual", r.identity_residual},
              {"threshold", r.threshold},
              {"tests_agree", r.agree}};
  } else if (kind == "interference") {
    result = run_interference(sc, q, opts);
  } else if (kind == "two_slit") {
    result = {{"probability", two_slit(sc.vector(q.at("source").get<std::string>()),
                                       sc.vector(q.at("slit1").get<std::string>()),
                                       sc.vector(q.at("slit2").get<std::string>()),
                                       sc.vector(q.at("detector").get<std::string>()), opts.tol)}};
  } else if (kind == "sample") {
    result = run_sample(sc, q, opts);
  } else if (kind == "axioms") {
    result = run_axioms(sc, q, opts);
  } else {
    throw Error(ErrorKind::ValidationError, "query.kind: unknown query kind '" + kind + "'");
  }
  return {{"query", q}, {"result", result}, {"tolerances", {{"tol", opts.tol}}}, {"warnings", sc.algebra.warnings()}};
}

// ---------------------------------------------------------------------------
// Demonstrations

std::pair<QuantumEvent, QuantumEvent> rank_two_pair() {
  Matrix e(4, 4);
  e(0, 0) = e(1, 1) = 1.0;
  Matrix f(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    f(i, i) = 0.5;
    f(i, (i + 2) % 4) = 0.5;
  }
  return {QuantumEvent(Projection(e)), QuantumEvent(Projection(f))};
}

Json demo_rank_two_pair(const RunOptions& opts) {
  const auto [e, f] = rank_two_pair();
  const auto forward = predictability(f, e, opts.tol);   // P(F|E)
  const auto backward = predictability(e, f, opts.tol);  // P(E|F)
  const double efe_residual = frobenius_norm(quadratic_triple(e.op(), f.op()) - 0.5 * e.op());

  // Every state that can see E assigns F probability 1/2 after observing it.
  random::Engine rng(opts.seed);
  Json samples = Json::array();
  std::vector<DensityState> states{DensityState::maximally_mixed(4)};
  for (int k = 0; k < 4; ++k) states.emplace_back(random::density(4, rng));
  for (const auto& mu : states) samples.push_back(prob(condition(mu, e, opts.tol), f));

  return {{"demo", "rank-two-pair"},
          {"E", matrix_to_json(e.matrix())},
          {"F", matrix_to_json(f.matrix())},
          {"P(F|E)", predictability_to_json(forward)},
          {"P(E|F)", predictability_to_json(backward)},
          {"EFE_minus_half_E", efe_residual},
          {"compatible", compatible(e, f, opts.tol)},
          {"conditioned_samples", samples},
          {"tolerances", {{"tol", opts.tol}}}};
}

Json demo_order(const RunOptions& opts) {
  const double h = 1.0 / std::sqrt(2.0);
  const QuantumEvent f1(StateVector({1.0, 0.0, 0.0}).projector());
  const QuantumEvent f2(StateVector({h, h, 0.0}).projector());
  const QuantumEvent target(StateVector({0.0, 1.0, 0.0}).projector());
  const DensityState mu = DensityState::maximally_mixed(3);

  const QuantumEvent forward_seq[] = {f1, f2};
  const QuantumEvent reverse_seq[] = {f2, f1};
  const double forward = prob(condition_seq(mu, forward_seq, opts.tol), target);
  const double reverse = prob(condition_seq(mu, reverse_seq, opts.tol), target);
  return {{"demo", "order"},
          {"state", "I/3"},
          {"F1", "P(e1)"},
          {"F2", "P((e1+e2)/sqrt2)"},
          {"E", "P(e2)"},
          {"mu(E|F1,F2)", forward},
          {"mu(E|F2,F1)", reverse},
          {"P(E|F2)", predictability_to_json(predictability(target, f2, opts.tol))},
          {"P(E|F1)", predictability_to_json(predictability(target, f1, opts.tol))},
          {"tolerances", {{"tol", opts.tol}}}};
}

namespace {

Json table_to_json(const TableState& t) {
  Json out = Json::object();
  for (const auto& e : t.entries()) out[e.name] = e.value;
  return out;
}

Json check_to_json(const TableCheck& c) { return {{"ok", c.ok}, {"violations", c.violations}}; }

Json qubit_case(const QubitDemo& d, double angle) {
  return {{"angle_rad", angle},
          {"lueders_table", table_to_json(d.lueders)},
          {"alternative_table", table_to_json(d.flipped)},
          {"special_case_half", d.special_case},
          {"lueders_is_state", check_to_json(d.lueders_state)},
          {"alternative_is_state", check_to_json(d.flipped_state)},
          {"lueders_is_conditional", check_to_json(d.lueders_conditional)},
          {"alternative_is_conditional", check_to_json(d.flipped_conditional)},
          {"tables_differ", d.differ}};
}

}  // namespace

Json demo_qubit(const RunOptions& opts) {
  (void)opts;
  const StateVector e({1.0, 0.0});
  const DensityState mixed = DensityState::maximally_mixed(2);
  Json cases = Json::array();
  for (double angle : {std::numbers::pi / 4.0, std::numbers::pi / 6.0}) {
    const StateVector g({std::cos(angle), std::sin(angle)});
    cases.push_back(qubit_case(qubit_nonuniqueness_demo(e, g, mixed), angle));
  }
  bool all = true;
  for (const auto& c : cases) {
    all = all && c["lueders_is_state"]["ok"].get<bool>() && c["alternative_is_state"]["ok"].get<bool>() &&
          c["lueders_is_conditional"]["ok"].get<bool>() && c["alternative_is_conditional"]["ok"].get<bool>() &&
          c["tables_differ"].get<bool>();
  }
  return {{"demo", "qubit"},
          {"events", {"0", "1", "E", "E'", "G", "G'"}},
          {"E", "P(1,0)"},
          {"G", "P(cos a, sin a)"},
          {"initial_state", "I/2"},
          {"cases", cases},
          {"non_unique", all},
          {"warnings", {"type I2: not a UCP space; conditional probabilities are not unique"}}};
}

Json run_axiom_suite(std::size_t budget, const RunOptions& opts) {
  Json runs = Json::array();
  bool ok = true;
  for (std::size_t n = 2; n <= 6; ++n) {
    const AxiomReport rep = verify_orthospace_axioms(BooleanAlgebra(SampleSpace(n)), budget, opts.seed + n);
    ok = ok && rep.ok();
    Json r = axioms_to_json(rep, budget, opts.seed + n);
    r["algebra"] = {{"kind", "boolean"}, {"size", n}};
    runs.push_back(std::move(r));
  }
  for (std::size_t n : {3, 4, 6}) {
    const AxiomReport rep = verify_orthospace_axioms(QuantumAlgebra(n), budget, opts.seed + 100 + n);
    ok = ok && rep.ok();
    Json r = axioms_to_json(rep, budget, opts.seed + 100 + n);
    r["algebra"] = {{"kind", "quantum"}, {"dim", n}};
    runs.push_back(std::move(r));
  }
  return {{"ok", ok}, {"runs", runs}};
}

// ---------------------------------------------------------------------------
// Output

namespace {

void write_json(const Json& j, bool pretty, int depth, std::string& out) {
  const auto indent = [&](int d) {
    if (pretty) {
      out += '\n';
      out.append(static_cast<std::size_t>(2 * d), ' ');
    }
  };
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        indent(depth + 1);
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        write_json(it.value(), pretty, depth + 1, out);
      }
      indent(depth);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Rows of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += pretty && flat ? ", " : ",";
        if (!flat) indent(depth + 1);
        write_json(j[i], pretty, depth + 1, out);
      }
      if (!flat) indent(depth);
      out += ']';
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>() + 0.0;  // folds -0 into 0
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, pretty ? "%.6g" : "%.17g", x);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_output(const Json& doc, bool pretty) {
  std::string out;
  write_json(doc, pretty, 0, out);
  out += '\n';
  return out;
}

}  // namespace ucp::io
