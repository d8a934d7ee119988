#pragma once

// Scenario files: a JSON document naming an event algebra, events, states
// and one query.
//
//   {
//     "algebra": {"kind": "quantum", "dim": 4},
//     "events":  {"E": {"matrix": [[[1,0],[0,0],...], ...]},
//                 "F": {"span": [[[1,0],[0,0],[1,0],[0,0]], ...]}},
//     "states":  {"mixed": {"density": [[[0.25,0], ...], ...]},
//                 "psi":   {"vector": [[1,0],[0,0],[0,0],[0,0]]}},
//     "query":   {"kind": "predictability", "target": "F", "given": "E"}
//   }
//
// Boolean algebras use {"kind": "boolean", "size": N, "labels": [...]}
// (labels optional), events {"members": [...]} with 0-based indices or
// labels, and states {"weights": [...]}. Complex numbers are [re, im].

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ucp/events.hpp"
#include "ucp/matrix.hpp"
#include "ucp/states.hpp"

namespace ucp::io {

using Json = nlohmann::json;

struct AlgebraSpec {
  bool quantum = false;
  std::size_t size = 0;  // sample points or Hilbert space dimension
  std::vector<std::string> labels;

  friend bool operator==(const AlgebraSpec&, const AlgebraSpec&) = default;
};

struct MembersSpec {
  std::vector<std::size_t> indices;
  friend bool operator==(const MembersSpec&, const MembersSpec&) = default;
};
struct MatrixSpec {
  Matrix matrix;
  friend bool operator==(const MatrixSpec&, const MatrixSpec&) = default;
};
struct SpanSpec {
  std::vector<CVector> vectors;
  friend bool operator==(const SpanSpec&, const SpanSpec&) = default;
};
using EventSpec = std::variant<MembersSpec, MatrixSpec, SpanSpec>;

struct WeightsSpec {
  std::vector<double> weights;
  friend bool operator==(const WeightsSpec&, const WeightsSpec&) = default;
};
struct DensitySpec {
  Matrix matrix;
  friend bool operator==(const DensitySpec&, const DensitySpec&) = default;
};
struct VectorSpec {
  CVector entries;
  friend bool operator==(const VectorSpec&, const VectorSpec&) = default;
};
using StateSpec = std::variant<WeightsSpec, DensitySpec, VectorSpec>;

/// The declarative content of a scenario file.
struct ScenarioSpec {
  AlgebraSpec algebra;
  std::map<std::string, EventSpec> events;
  std::map<std::string, StateSpec> states;
  Json query;  // null when the file has no query

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// A validated scenario: its parsed description plus the constructed objects.
struct Scenario {
  ScenarioSpec spec;
  EventAlgebra algebra;
  std::map<std::string, State> states;
  std::map<std::string, StateVector> vectors;  // states given as unit vectors

  const State& state(const std::string& name) const;
  const StateVector& vector(const std::string& name) const;
};

/// Throws Error(ParseError) for malformed JSON and Error(ValidationError)
/// with a location prefix (e.g. "events.F.matrix[2][1]") for everything else.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

/// Validates a query object against a scenario's names (ValidationError).
void check_query(const Json& query, const Scenario& sc);

/// Validates a parsed scenario description and builds its objects.
Scenario build_scenario(ScenarioSpec spec);

Json to_json(const ScenarioSpec& spec);
std::string serialize(const ScenarioSpec& spec);

Json complex_to_json(Complex z);
Json matrix_to_json(const Matrix& m);
Json vector_to_json(std::span<const Complex> v);

}  // namespace ucp::io
