#include "ucp/scenario.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include "ucp/error.hpp"

namespace ucp::io {

namespace {

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ValidationError, where + ": " + what);
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) invalid(where, std::string("missing field '") + key + "'");
  return *it;
}

void allow_only(const Json& obj, std::initializer_list<std::string_view> keys, const std::string& where) {
  for (const auto& [k, _] : obj.items()) {
    bool known = false;
    for (auto allowed : keys) known = known || k == allowed;
    if (!known) invalid(where, "unknown field '" + k + "'");
  }
}

std::size_t positive_integer(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned() || j.get<std::size_t>() == 0) invalid(where, "expected a positive integer");
  return j.get<std::size_t>();
}

double finite_number(const Json& j, const std::string& where) {
  if (!j.is_number()) invalid(where, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) invalid(where, "expected a finite number");
  return x;
}

Complex parse_complex(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) invalid(where, "expected a complex number as [re, im]");
  return {finite_number(j[0], where + "[0]"), finite_number(j[1], where + "[1]")};
}

CVector parse_vector(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array()) invalid(where, "expected an array of complex entries");
  if (j.size() != n) {
    invalid(where, "expected " + std::to_string(n) + " entries, got " + std::to_string(j.size()));
  }
  CVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_complex(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

Matrix parse_matrix(const Json& j, std::size_t n, const std::string& where) {
  if (!j.is_array() || j.size() != n) invalid(where, "expected " + std::to_string(n) + " rows");
  std::vector<Complex> entries;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = parse_vector(j[i], n, where + "[" + std::to_string(i) + "]");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return Matrix(n, n, std::move(entries));
}

AlgebraSpec parse_algebra(const Json& j) {
  const std::string where = "algebra";
  if (!j.is_object()) invalid(where, "expected an object");
  const Json& kind = field(j, "kind", where);
  AlgebraSpec spec;
  if (kind == "boolean") {
    allow_only(j, {"kind", "size", "labels"}, where);
    spec.size = positive_integer(field(j, "size", where), where + ".size");
    if (auto it = j.find("labels"); it != j.end()) {
      if (!it->is_array() || it->size() != spec.size) {
        invalid(where + ".labels", "expected " + std::to_string(spec.size) + " labels");
      }
      for (std::size_t i = 0; i < it->size(); ++i) {
        if (!(*it)[i].is_string()) invalid(where + ".labels[" + std::to_string(i) + "]", "expected a string");
        spec.labels.push_back((*it)[i].get<std::string>());
      }
    }
  } else if (kind == "quantum") {
    allow_only(j, {"kind", "dim"}, where);
    spec.quantum = true;
    spec.size = positive_integer(field(j, "dim", where), where + ".dim");
  } else {
    invalid(where + ".kind", "expected \"boolean\" or \"quantum\"");
  }
  return spec;
}

EventSpec parse_event(const Json& j, const AlgebraSpec& alg, const std::string& where) {
  if (!j.is_object() || j.size() != 1) {
    invalid(where, "expected exactly one of 'members', 'matrix', 'span'");
  }
  const std::string key = j.begin().key();
  const Json& value = j.begin().value();
  if (key == "members") {
    if (alg.quantum) invalid(where, "'members' is only valid in a Boolean algebra");
    if (!value.is_array()) invalid(where + ".members", "expected an array");
    MembersSpec m;
    for (std::size_t i = 0; i < value.size(); ++i) {
      const std::string at = where + ".members[" + std::to_string(i) + "]";
      const Json& v = value[i];
      std::size_t idx = 0;
      if (v.is_number_unsigned()) {
        idx = v.get<std::size_t>();
      } else if (v.is_string()) {
        auto it = std::find(alg.labels.begin(), alg.labels.end(), v.get<std::string>());
        if (it == alg.labels.end()) invalid(at, "unknown sample point label '" + v.get<std::string>() + "'");
        idx = static_cast<std::size_t>(it - alg.labels.begin());
      } else {
        invalid(at, "expected a point index or label");
      }
      if (idx >= alg.size) invalid(at, "point index " + std::to_string(idx) + " out of range");
      m.indices.push_back(idx);
    }
    return m;
  }
  if (key == "matrix" || key == "span") {
    if (!alg.quantum) invalid(where, "'" + key + "' is only valid in a quantum algebra");
    if (key == "matrix") return MatrixSpec{parse_matrix(value, alg.size, where + ".matrix")};
    if (!value.is_array() || value.empty()) invalid(where + ".span", "expected a non-empty array of vectors");
    SpanSpec s;
    for (std::size_t i = 0; i < value.size(); ++i) {
      s.vectors.push_back(parse_vector(value[i], alg.size, where + ".span[" + std::to_string(i) + "]"));
    }
    return s;
  }
  invalid(where, "unknown event form '" + key + "'");
}

StateSpec parse_state(const Json& j, const AlgebraSpec& alg, const std::string& where) {
  if (!j.is_object() || j.size() != 1) {
    invalid(where, "expected exactly one of 'weights', 'density', 'vector'");
  }
  const std::string key = j.begin().key();
  const Json& value = j.begin().value();
  if (key == "weights") {
    if (alg.quantum) invalid(where, "'weights' is only valid in a Boolean algebra");
    if (!value.is_array() || value.size() != alg.size) {
      invalid(where + ".weights", "expected " + std::to_string(alg.size) + " weights");
    }
    WeightsSpec w;
    for (std::size_t i = 0; i < value.size(); ++i) {
      w.weights.push_back(finite_number(value[i], where + ".weights[" + std::to_string(i) + "]"));
    }
    return w;
  }
  if (key == "density" || key == "vector") {
    if (!alg.quantum) invalid(where, "'" + key + "' is only valid in a quantum algebra");
    if (key == "density") return DensitySpec{parse_matrix(value, alg.size, where + ".density")};
    return VectorSpec{parse_vector(value, alg.size, where + ".vector")};
  }
  invalid(where, "unknown state form '" + key + "'");
}

// ---------------------------------------------------------------------------
// Query schema

enum class Ref { Event, EventList, EventOrList, State, Vector, Integer };

struct FieldRule {
  const char* name;
  Ref ref;
  bool required;
};

const std::map<std::string, std::vector<FieldRule>>& query_rules() {
  static const std::map<std::string, std::vector<FieldRule>> rules = {
      {"prob", {{"state", Ref::State, true}, {"event", Ref::Event, true}}},
      {"condition",
       {{"state", Ref::State, true}, {"given", Ref::EventOrList, true}, {"report", Ref::EventList, false}}},
      {"condition_seq",
       {{"state", Ref::State, true}, {"given", Ref::EventList, true}, {"report", Ref::EventList, false}}},
      {"predictability", {{"target", Ref::Event, true}, {"given", Ref::EventOrList, true}}},
      {"compatible", {{"a", Ref::Event, true}, {"b", Ref::Event, true}}},
      {"interference",
       {{"atom", Ref::Event, true},
        {"path1", Ref::Event, true},
        {"path2", Ref::Event, true},
        {"detector", Ref::Event, true}}},
      {"two_slit",
       {{"source", Ref::Vector, true},
        {"slit1", Ref::Vector, true},
        {"slit2", Ref::Vector, true},
        {"detector", Ref::Vector, true}}},
      {"sample",
       {{"state", Ref::State, true},
        {"tests", Ref::EventList, true},
        {"final", Ref::Event, true},
        {"trials", Ref::Integer, false},
        {"seed", Ref::Integer, false}}},
      {"axioms", {{"budget", Ref::Integer, false}, {"seed", Ref::Integer, false}}},
  };
  return rules;
}

void validate_query(const Json& q, const Scenario& sc) {
  const std::string where = "query";
  if (!q.is_object()) invalid(where, "expected an object");
  const Json& kind = field(q, "kind", where);
  if (!kind.is_string()) invalid(where + ".kind", "expected a string");
  auto rule_it = query_rules().find(kind.get<std::string>());
  if (rule_it == query_rules().end()) invalid(where + ".kind", "unknown query kind '" + kind.get<std::string>() + "'");

  std::set<std::string> known = {"kind"};
  for (const auto& rule : rule_it->second) known.insert(rule.name);
  for (const auto& [k, _] : q.items()) {
    if (!known.contains(k)) invalid(where, "unknown field '" + k + "' for query kind '" + rule_it->first + "'");
  }

  auto check_event = [&](const Json& j, const std::string& at) {
    if (!j.is_string()) invalid(at, "expected an event name");
    if (!sc.algebra.contains(j.get<std::string>())) invalid(at, "unknown event '" + j.get<std::string>() + "'");
  };
  for (const auto& rule : rule_it->second) {
    auto it = q.find(rule.name);
    const std::string at = where + "." + rule.name;
    if (it == q.end()) {
      if (rule.required) invalid(where, std::string("missing field '") + rule.name + "'");
      continue;
    }
    const Json& v = *it;
    switch (rule.ref) {
      case Ref::Event:
        check_event(v, at);
        break;
      case Ref::EventOrList:
        if (v.is_string()) {
          check_event(v, at);
          break;
        }
        [[fallthrough]];
      case Ref::EventList:
        if (!v.is_array() || v.empty()) invalid(at, "expected a non-empty list of event names");
        for (std::size_t i = 0; i < v.size(); ++i) check_event(v[i], at + "[" + std::to_string(i) + "]");
        break;
      case Ref::State:
        if (!v.is_string() || !sc.states.contains(v.get<std::string>())) invalid(at, "unknown state");
        break;
      case Ref::Vector:
        if (!v.is_string() || !sc.vectors.contains(v.get<std::string>())) {
          invalid(at, "expected the name of a state given as a unit vector");
        }
        break;
      case Ref::Integer:
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) invalid(at, "expected a non-negative integer");
        break;
    }
  }
}

}  // namespace

void check_query(const Json& query, const Scenario& sc) { validate_query(query, sc); }

// ---------------------------------------------------------------------------

const State& Scenario::state(const std::string& name) const {
  auto it = states.find(name);
  if (it == states.end()) throw Error(ErrorKind::ValidationError, "unknown state '" + name + "'");
  return it->second;
}

const StateVector& Scenario::vector(const std::string& name) const {
  auto it = vectors.find(name);
  if (it == vectors.end()) throw Error(ErrorKind::ValidationError, "state '" + name + "' is not a unit vector");
  return it->second;
}

Scenario build_scenario(ScenarioSpec spec) {
  const AlgebraSpec& a = spec.algebra;
  EventAlgebra algebra = [&] {
    try {
      if (a.quantum) return EventAlgebra(QuantumAlgebra(a.size));
      return a.labels.empty() ? EventAlgebra(BooleanAlgebra(SampleSpace(a.size)))
                              : EventAlgebra(BooleanAlgebra(SampleSpace(a.labels)));
    } catch (const Error& err) {
      invalid("algebra", err.what());
    }
  }();

  for (const auto& [name, es] : spec.events) {
    const std::string where = "events." + name;
    try {
      if (const auto* m = std::get_if<MembersSpec>(&es)) {
        algebra.add(name, algebra.boolean().event(m->indices));
      } else if (const auto* mx = std::get_if<MatrixSpec>(&es)) {
        algebra.add(name, QuantumEvent(Projection(mx->matrix)));
      } else {
        algebra.add(name, QuantumEvent(projector_from_span(std::get<SpanSpec>(es).vectors)));
      }
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::ValidationError) throw;
      invalid(where, err.what());
    }
  }

  std::map<std::string, State> states;
  std::map<std::string, StateVector> vectors;
  for (const auto& [name, ss] : spec.states) {
    const std::string where = "states." + name;
    try {
      if (const auto* w = std::get_if<WeightsSpec>(&ss)) {
        states.emplace(name, ClassicalState(algebra.boolean().space_ptr(), w->weights));
      } else if (const auto* d = std::get_if<DensitySpec>(&ss)) {
        states.emplace(name, DensityState(HermitianOperator(d->matrix)));
      } else {
        StateVector v = StateVector::normalized(std::get<VectorSpec>(ss).entries, 1e-6);
        states.emplace(name, DensityState::pure(v));
        vectors.emplace(name, std::move(v));
      }
    } catch (const Error& err) {
      invalid(where, err.what());
    }
  }

  Scenario sc{std::move(spec), std::move(algebra), std::move(states), std::move(vectors)};
  if (!sc.spec.query.is_null()) validate_query(sc.spec.query, sc);
  return sc;
}

Scenario parse_scenario(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& err) {
    // Report a line/column instead of a raw byte offset.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < err.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
  if (!doc.is_object()) invalid("scenario", "expected a JSON object at top level");
  allow_only(doc, {"algebra", "events", "states", "query"}, "scenario");

  ScenarioSpec spec;
  spec.algebra = parse_algebra(field(doc, "algebra", "scenario"));
  if (auto it = doc.find("events"); it != doc.end()) {
    if (!it->is_object()) invalid("events", "expected an object mapping names to events");
    for (const auto& [name, ev] : it->items()) spec.events.emplace(name, parse_event(ev, spec.algebra, "events." + name));
  }
  if (auto it = doc.find("states"); it != doc.end()) {
    if (!it->is_object()) invalid("states", "expected an object mapping names to states");
    for (const auto& [name, st] : it->items()) spec.states.emplace(name, parse_state(st, spec.algebra, "states." + name));
  }
  if (auto it = doc.find("query"); it != doc.end()) spec.query = *it;
  return build_scenario(std::move(spec));
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const Error& err) {
    throw Error(err.kind(), path + ": " + err.what());
  }
}

// ---------------------------------------------------------------------------
// Serialization

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json vector_to_json(std::span<const Complex> v) {
  Json out = Json::array();
  for (const Complex& z : v) out.push_back(complex_to_json(z));
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const ScenarioSpec& spec) {
  Json doc;
  if (spec.algebra.quantum) {
    doc["algebra"] = {{"kind", "quantum"}, {"dim", spec.algebra.size}};
  } else {
    doc["algebra"] = {{"kind", "boolean"}, {"size", spec.algebra.size}};
    if (!spec.algebra.labels.empty()) doc["algebra"]["labels"] = spec.algebra.labels;
  }
  doc["events"] = Json::object();
  for (const auto& [name, es] : spec.events) {
    if (const auto* m = std::get_if<MembersSpec>(&es)) {
      doc["events"][name] = {{"members", m->indices}};
    } else if (const auto* mx = std::get_if<MatrixSpec>(&es)) {
      doc["events"][name] = {{"matrix", matrix_to_json(mx->matrix)}};
    } else {
      Json vs = Json::array();
      for (const auto& v : std::get<SpanSpec>(es).vectors) vs.push_back(vector_to_json(v));
      doc["events"][name] = {{"span", vs}};
    }
  }
  doc["states"] = Json::object();
  for (const auto& [name, ss] : spec.states) {
    if (const auto* w = std::get_if<WeightsSpec>(&ss)) {
      doc["states"][name] = {{"weights", w->weights}};
    } else if (const auto* d = std::get_if<DensitySpec>(&ss)) {
      doc["states"][name] = {{"density", matrix_to_json(d->matrix)}};
    } else {
      doc["states"][name] = {{"vector", vector_to_json(std::get<VectorSpec>(ss).entries)}};
    }
  }
  if (!spec.query.is_null()) doc["query"] = spec.query;
  return doc;
}

std::string serialize(const ScenarioSpec& spec) { return to_json(spec).dump(2); }

}  // namespace ucp::io
