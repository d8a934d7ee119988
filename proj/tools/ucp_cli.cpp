// Command-line front end: runs scenario queries and the built-in demos.
//
// Exit codes: 0 success, 1 parse/validation error, 2 computation error.

#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ucp/error.hpp"
#include "ucp/query.hpp"
#include "ucp/scenario.hpp"

namespace {

using ucp::io::Json;

struct Globals {
  std::string scenario;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  std::size_t trials = 100000;
  unsigned threads = 1;
  bool pretty = false;
};

// Option values for the query-building subcommands; empty means "take the
// value from the scenario's own query".
struct QueryArgs {
  std::string state, event, target, a, b, atom, path1, path2, detector, source, slit1, slit2, final_event;
  std::vector<std::string> given, report, tests;
  std::optional<std::size_t> budget;
};

void set_if(Json& q, const char* key, const std::string& v) {
  if (!v.empty()) q[key] = v;
}
void set_if(Json& q, const char* key, const std::vector<std::string>& v) {
  if (!v.empty()) q[key] = v;
}

// Starts from the scenario's query when it has one of the accepted kinds and
// overlays the command-line values.
Json build_query(const ucp::io::Scenario& sc, const std::set<std::string>& kinds, const std::string& kind,
                 const QueryArgs& args) {
  Json q = Json::object();
  const Json& base = sc.spec.query;
  if (base.is_object() && kinds.contains(base.value("kind", ""))) q = base;
  if (!q.contains("kind")) q["kind"] = kind;
  set_if(q, "state", args.state);
  set_if(q, "event", args.event);
  set_if(q, "target", args.target);
  set_if(q, "a", args.a);
  set_if(q, "b", args.b);
  set_if(q, "atom", args.atom);
  set_if(q, "path1", args.path1);
  set_if(q, "path2", args.path2);
  set_if(q, "detector", args.detector);
  set_if(q, "source", args.source);
  set_if(q, "slit1", args.slit1);
  set_if(q, "slit2", args.slit2);
  set_if(q, "final", args.final_event);
  set_if(q, "given", args.given);
  set_if(q, "report", args.report);
  set_if(q, "tests", args.tests);
  if (args.budget) q["budget"] = *args.budget;
  return q;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional probability on events of Boolean and projection algebras"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--scenario", g.scenario, "Scenario file (JSON)");
  app.add_option("--tol", g.tol, "Tolerance for predictability and zero-probability checks")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  auto* trials_opt = app.add_option("--trials", g.trials, "Sampler trials")->capture_default_str();
  app.add_option("--threads", g.threads, "Sampler worker threads")->capture_default_str();
  app.add_flag("--pretty", g.pretty, "Indented output with 6 significant digits");

  QueryArgs qa;
  struct Command {
    CLI::App* app;
    std::string kind;
    std::set<std::string> kinds;
  };
  std::vector<Command> commands;
  auto query_command = [&](const char* name, const char* help, std::string kind, std::set<std::string> kinds) {
    auto* sub = app.add_subcommand(name, help);
    commands.push_back({sub, std::move(kind), std::move(kinds)});
    return sub;
  };

  auto* predict = query_command("predict", "Statistical predictability P(target | given...)", "predictability",
                                {"predictability"});
  predict->add_option("--target", qa.target, "Target event");
  predict->add_option("--given", qa.given, "Conditioning events, in order");

  auto* cond = query_command("condition", "Condition a state on events and report probabilities", "condition",
                             {"condition", "condition_seq"});
  cond->add_option("--state", qa.state, "Initial state");
  cond->add_option("--given", qa.given, "Conditioning events, in order");
  cond->add_option("--report", qa.report, "Events to report (default: all)");

  auto* compat = query_command("compat", "Compatibility of two events", "compatible", {"compatible"});
  compat->add_option("--a", qa.a, "First event");
  compat->add_option("--b", qa.b, "Second event");

  auto* interfere =
      query_command("interfere", "Interference decomposition of a detector probability", "interference",
                    {"interference"});
  interfere->add_option("--atom", qa.atom, "Source atom");
  interfere->add_option("--path1", qa.path1, "First path");
  interfere->add_option("--path2", qa.path2, "Second path");
  interfere->add_option("--detector", qa.detector, "Detector event");

  auto* twoslit = query_command("twoslit", "Two-slit probability from unit vectors", "two_slit", {"two_slit"});
  twoslit->add_option("--source", qa.source, "Source vector");
  twoslit->add_option("--slit1", qa.slit1, "First slit vector");
  twoslit->add_option("--slit2", qa.slit2, "Second slit vector");
  twoslit->add_option("--detector", qa.detector, "Detector vector");

  auto* sample = query_command("sample", "Monte Carlo sequential measurement", "sample", {"sample"});
  sample->add_option("--state", qa.state, "Initial state");
  sample->add_option("--tests", qa.tests, "Tests, in order");
  sample->add_option("--final", qa.final_event, "Final event");

  auto* axioms = query_command("axioms", "Orthospace axiom harness", "axioms", {"axioms"});
  axioms->add_option("--budget", qa.budget, "Instances per axiom");

  auto* run = app.add_subcommand("run", "Run the scenario's own query");
  auto* demo_qubit = app.add_subcommand("demo-qubit", "Two conditional tables for a qubit");
  auto* demo_sec7 = app.add_subcommand("demo-sec7", "Rank-two pair on C^4 with P(F|E) = 1/2");
  auto* demo_order = app.add_subcommand("demo-order", "Order dependence of sequential conditioning");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  ucp::io::RunOptions opts;
  opts.tol = g.tol;
  opts.seed = g.seed;
  opts.trials = g.trials;
  opts.threads = g.threads;
  opts.seed_set = seed_opt->count() > 0;
  opts.trials_set = trials_opt->count() > 0;

  try {
    Json doc;
    if (*demo_sec7) {
      doc = ucp::io::demo_rank_two_pair(opts);
    } else if (*demo_order) {
      doc = ucp::io::demo_order(opts);
    } else if (*demo_qubit) {
      doc = ucp::io::demo_qubit(opts);
    } else if (*axioms && g.scenario.empty()) {
      doc = ucp::io::run_axiom_suite(qa.budget.value_or(1000), opts);
    } else {
      if (g.scenario.empty()) {
        std::cerr << "error: --scenario is required for this subcommand\n";
        return 1;
      }
      const ucp::io::Scenario sc = ucp::io::load_scenario(g.scenario);
      for (const auto& w : sc.algebra.warnings()) std::cerr << "warning: " << w << '\n';
      if (*run) {
        doc = ucp::io::run_query(sc, opts);
      } else {
        for (const auto& c : commands) {
          if (!*c.app) continue;
          const Json q = build_query(sc, c.kinds, c.kind, qa);
          ucp::io::check_query(q, sc);
          doc = ucp::io::run_query(sc, q, opts);
        }
      }
    }
    std::cout << ucp::io::format_output(doc, g.pretty);
    return 0;
  } catch (const ucp::Error& e) {
    std::cerr << "error [" << ucp::to_string(e.kind()) << "]: " << e.what() << '\n';
    return e.is_input_error() ? 1 : 2;
  } catch (const Json::exception& e) {
    std::cerr << "error [ValidationError]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
