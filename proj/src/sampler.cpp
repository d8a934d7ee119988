#include "ucp/sampler.hpp"

#include <algorithm>

#include <cmath>
#include <limits>
#include <thread>

#include "ucp/error.hpp"

namespace ucp {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial)
    : key_(splitmix64(splitmix64(seed) ^ trial)) {}

double TrialRng::uniform() {
  const std::uint64_t bits = splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

namespace {

bool draw(TrialRng& rng, double p_yes) {
  if (p_yes < kDegenerateBranch) return false;
  if (1.0 - p_yes < kDegenerateBranch) return true;
  return rng.uniform() < p_yes;
}

struct Tally {
  std::map<std::string, std::size_t> outcomes;
  std::size_t all_yes = 0;
  std::size_t final_yes = 0;
};

template <class S, class E>
Tally run_trials(const S& initial, std::span<const E> tests, std::span<const E> negations,
                 const E& final_event, std::uint64_t seed, std::size_t begin, std::size_t end) {
  Tally t;
  std::string path(tests.size(), '0');
  for (std::size_t trial = begin; trial < end; ++trial) {
    TrialRng rng(seed, trial);
    S rho = initial;
    bool all_yes = true;
    for (std::size_t k = 0; k < tests.size(); ++k) {
      const bool yes = draw(rng, prob(rho, tests[k]));
      path[k] = yes ? '1' : '0';
      all_yes = all_yes && yes;
      rho = condition(rho, yes ? tests[k] : negations[k], 0.0);
    }
    ++t.outcomes[path];
    if (all_yes) {
      ++t.all_yes;
      if (draw(rng, prob(rho, final_event))) ++t.final_yes;
    }
  }
  return t;
}

template <class S, class E>
ChainResult sample(const S& initial, std::span<const E> tests, const E& final_event, const SamplerConfig& cfg) {
  if (tests.empty()) throw Error(ErrorKind::EmptyChain, "a measurement chain needs at least one test");
  if (cfg.trials == 0) throw Error(ErrorKind::InvalidValue, "trials must be at least 1");
  // Surfaces AlgebraMismatch before any work is spread out.
  for (const auto& t : tests) (void)prob(initial, t);
  (void)prob(initial, final_event);

  std::vector<E> negations;
  for (const auto& t : tests) negations.push_back(complement(t));

  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.trials)));
  std::vector<Tally> parts(workers);
  if (workers == 1) {
    parts[0] = run_trials<S, E>(initial, tests, negations, final_event, cfg.seed, 0, cfg.trials);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (cfg.trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(cfg.trials, w * chunk);
      const std::size_t end = std::min(cfg.trials, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        parts[w] = run_trials<S, E>(initial, tests, negations, final_event, cfg.seed, begin, end);
      });
    }
    for (auto& th : pool) th.join();
  }

  ChainResult r;
  r.trials = cfg.trials;
  for (const auto& p : parts) {
    for (const auto& [path, n] : p.outcomes) r.outcome_counts[path] += n;
    r.all_yes_count += p.all_yes;
    r.final_event_yes_count += p.final_yes;
  }
  if (r.all_yes_count > 0) {
    const double n = static_cast<double>(r.all_yes_count);
    r.empirical_p = static_cast<double>(r.final_event_yes_count) / n;
    r.std_error = std::sqrt(r.empirical_p * (1.0 - r.empirical_p) / n);
  } else {
    r.empirical_p = std::numeric_limits<double>::quiet_NaN();
    r.std_error = std::numeric_limits<double>::quiet_NaN();
  }
  try {
    const auto pred = predictability_seq(final_event, tests);
    if (pred.predictable) r.predicted_p = pred.s;
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::ImpossibleSequence) throw;
  }
  return r;
}

}  // namespace

ChainResult sample_chain(const DensityState& initial, std::span<const QuantumEvent> tests,
                         const QuantumEvent& final_event, const SamplerConfig& cfg) {
  return sample(initial, tests, final_event, cfg);
}

ChainResult sample_chain(const ClassicalState& initial, std::span<const BooleanEvent> tests,
                         const BooleanEvent& final_event, const SamplerConfig& cfg) {
  return sample(initial, tests, final_event, cfg);
}

ChainResult sample_chain(const State& initial, std::span<const Event> tests, const Event& final_event,
                         const SamplerConfig& cfg) {
  if (const auto* c = std::get_if<ClassicalState>(&initial)) {
    std::vector<BooleanEvent> seq;
    for (const auto& t : tests) {
      const auto* b = std::get_if<BooleanEvent>(&t);
      if (b == nullptr) throw Error(ErrorKind::AlgebraMismatch, "classical state with a quantum test");
      seq.push_back(*b);
    }
    const auto* f = std::get_if<BooleanEvent>(&final_event);
    if (f == nullptr) throw Error(ErrorKind::AlgebraMismatch, "classical state with a quantum final event");
    return sample_chain(*c, std::span<const BooleanEvent>(seq), *f, cfg);
  }
  std::vector<QuantumEvent> seq;
  for (const auto& t : tests) {
    const auto* q = std::get_if<QuantumEvent>(&t);
    if (q == nullptr) throw Error(ErrorKind::AlgebraMismatch, "density state with a Boolean test");
    seq.push_back(*q);
  }
  const auto* f = std::get_if<QuantumEvent>(&final_event);
  if (f == nullptr) throw Error(ErrorKind::AlgebraMismatch, "density state with a Boolean final event");
  return sample_chain(std::get<DensityState>(initial), std::span<const QuantumEvent>(seq), *f, cfg);
}

std::map<std::string, double> outcome_distribution(const DensityState& initial,
                                                   std::span<const QuantumEvent> tests) {
  std::map<std::string, double> out;
  struct Node {
    DensityState rho;
    std::string path;
    double weight;
  };
  std::vector<Node> frontier{{initial, "", 1.0}};
  for (const auto& test : tests) {
    const QuantumEvent neg = complement(test);
    std::vector<Node> next;
    for (const auto& node : frontier) {
      const double p = prob(node.rho, test);
      if (p >= kDegenerateBranch) next.push_back({condition(node.rho, test, 0.0), node.path + '1', node.weight * p});
      if (1.0 - p >= kDegenerateBranch) {
        next.push_back({condition(node.rho, neg, 0.0), node.path + '0', node.weight * (1.0 - p)});
      }
    }
    frontier = std::move(next);
  }
  for (const auto& node : frontier) out[node.path] += node.weight;
  return out;
}

IndependenceReport state_independence_check(const QuantumEvent& target, std::span<const QuantumEvent> tests,
                                             std::span<const DensityState> initial_states,
                                             const SamplerConfig& cfg) {
  if (tests.empty()) throw Error(ErrorKind::EmptyChain, "a measurement chain needs at least one test");
  const auto pred = predictability_seq(target, tests);
  if (!pred.predictable) {
    throw Error(ErrorKind::NotPredictable, "target is not statistically predictable under the tests (residual " +
                                               std::to_string(pred.residual) + ")");
  }
  IndependenceReport report;
  report.predicted = pred.s;
  report.pass = true;
  for (std::size_t i = 0; i < initial_states.size(); ++i) {
    const auto& mu = initial_states[i];
    double reach = 1.0;
    DensityState rho = mu;
    for (const auto& t : tests) {
      const double p = prob(rho, t);
      reach *= p;
      if (reach <= cfg.tol) break;
      rho = condition(rho, t, 0.0);
    }
    if (reach <= cfg.tol) {
      throw SequenceError(ErrorKind::ZeroProbabilityCondition, i,
                          "initial state " + std::to_string(i) + " passes all tests with probability " +
                              std::to_string(reach));
    }
    SamplerConfig run_cfg = cfg;
    run_cfg.seed = cfg.seed + i;
    ChainResult run = sample_chain(mu, tests, target, run_cfg);
    const bool ok = run.all_yes_count > 0 && std::abs(run.empirical_p - pred.s) <= 4.0 * run.std_error;
    report.within_band.push_back(ok);
    report.pass = report.pass && ok;
    report.runs.push_back(std::move(run));
  }
  return report;
}

}  // namespace ucp
