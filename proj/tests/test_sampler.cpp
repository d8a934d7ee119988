#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "oracle.hpp"
#include "support.hpp"
#include "ucp/error.hpp"
#include "ucp/sampler.hpp"

using namespace ucp;
using testing::atom;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::InvalidValue;
}

SamplerConfig config(std::size_t trials, std::uint64_t seed = 42, unsigned threads = 1) {
  SamplerConfig c;
  c.trials = trials;
  c.seed = seed;
  c.threads = threads;
  return c;
}

// Probability of one yes/no path, one Lüders step at a time in Eigen.
double oracle_path(const DensityState& mu, std::span<const QuantumEvent> tests, const std::string& path) {
  oracle::MatrixXc rho = oracle::to_eigen(mu.rho());
  double p = 1.0;
  for (std::size_t k = 0; k < tests.size(); ++k) {
    oracle::MatrixXc e = oracle::to_eigen(tests[k].proj());
    if (path[k] == '0') e = oracle::MatrixXc::Identity(e.rows(), e.cols()) - e;
    const double step = oracle::prob(rho, e);
    if (step <= 0) return 0.0;
    p *= step;
    rho = oracle::lueders(rho, e);
  }
  return p;
}

}  // namespace

TEST_CASE("TrialRng is a pure function of seed and trial") {
  TrialRng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  bool differs_c = false, differs_d = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    CHECK(x == b.uniform());
    differs_c = differs_c || x != c.uniform();
    differs_d = differs_d || x != d.uniform();
  }
  CHECK(differs_c);
  CHECK(differs_d);
}

TEST_CASE("certain repetition gives exactly 1") {
  const auto f = atom({1, 0, 0});
  const auto mu = DensityState::pure(StateVector({1, 0, 0}));
  const QuantumEvent tests[] = {f};
  const auto r = sample_chain(mu, tests, f, config(1000));
  CHECK(r.all_yes_count == 1000);
  CHECK(r.empirical_p == 1.0);
  CHECK(r.std_error == 0.0);
  REQUIRE(r.predicted_p);
  CHECK(*r.predicted_p == doctest::Approx(1.0));
}

TEST_CASE("rank-two pair: estimate within the statistical band") {
  const QuantumEvent tests[] = {testing::pair_e()};
  const auto r = sample_chain(DensityState::maximally_mixed(4), tests, testing::pair_f(), config(50000));
  REQUIRE(r.all_yes_count > 0);
  CHECK(std::abs(r.empirical_p - 0.5) <= 4 * std::sqrt(0.25 / double(r.all_yes_count)));
  REQUIRE(r.predicted_p);
  CHECK(*r.predicted_p == doctest::Approx(0.5));
  CHECK(r.outcome_counts.at("1") == r.all_yes_count);
  CHECK(r.outcome_counts.at("0") + r.outcome_counts.at("1") == r.trials);
}

TEST_CASE("determinism across reruns and thread counts") {
  const double h = 1 / std::sqrt(2.0);
  const QuantumEvent tests[] = {atom({1, 0, 0}), atom({h, h, 0})};
  const auto mu = DensityState::maximally_mixed(3);
  const auto target = atom({0, 1, 0});
  const auto a = sample_chain(mu, tests, target, config(20001, 9, 1));
  const auto b = sample_chain(mu, tests, target, config(20001, 9, 1));
  const auto c = sample_chain(mu, tests, target, config(20001, 9, 3));
  const auto d = sample_chain(mu, tests, target, config(20001, 10, 1));
  CHECK(a == b);
  CHECK(a == c);
  CHECK_FALSE(a == d);
  CHECK(std::memcmp(&a.empirical_p, &c.empirical_p, sizeof(double)) == 0);
}

TEST_CASE("order dependence seen by sampling") {
  const double h = 1 / std::sqrt(2.0);
  const auto f1 = atom({1, 0, 0});
  const auto f2 = atom({h, h, 0});
  const auto target = atom({0, 1, 0});
  const auto mu = DensityState::maximally_mixed(3);
  const QuantumEvent fwd[] = {f1, f2};
  const QuantumEvent rev[] = {f2, f1};
  const auto a = sample_chain(mu, fwd, target, config(40000));
  const auto b = sample_chain(mu, rev, target, config(40000));
  CHECK(std::abs(a.empirical_p - 0.5) <= 4 * a.std_error);
  CHECK(b.empirical_p == 0.0);
  REQUIRE(a.predicted_p);
  CHECK(*a.predicted_p == doctest::Approx(0.5));
  REQUIRE(b.predicted_p);
  CHECK(*b.predicted_p == doctest::Approx(0.0));
}

TEST_CASE("property: path frequencies match the analytic distribution") {
  random::Engine rng(3);
  for (int k = 0; k < 5; ++k) {
    const auto mu = DensityState(random::density(3, rng));
    const QuantumEvent tests[] = {QuantumEvent(random::projection(3, 1, rng)),
                                  QuantumEvent(random::projection(3, 2, rng)),
                                  QuantumEvent(random::projection(3, 1, rng))};
    const auto exact = outcome_distribution(mu, tests);
    double total = 0;
    for (const auto& [path, p] : exact) {
      total += p;
      CHECK(std::abs(p - oracle_path(mu, tests, path)) <= 1e-12);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    const std::size_t n = 40000;
    const auto r = sample_chain(mu, tests, tests[0], config(n, 100 + k));
    for (const auto& [path, p] : exact) {
      const auto it = r.outcome_counts.find(path);
      const double freq = it == r.outcome_counts.end() ? 0.0 : double(it->second) / n;
      const double se = std::sqrt(std::max(p * (1 - p), 1e-12) / n);
      CHECK(std::abs(freq - p) <= 5 * se + 1e-12);
    }
  }
}

TEST_CASE("property: state-dependent values are still estimated consistently") {
  random::Engine rng(4);
  for (int k = 0; k < 5; ++k) {
    const auto mu = DensityState(random::density(4, rng));
    const QuantumEvent tests[] = {QuantumEvent(random::projection(4, 2, rng)),
                                  QuantumEvent(random::projection(4, 3, rng))};
    const QuantumEvent target(random::projection(4, 2, rng));
    const auto r = sample_chain(mu, tests, target, config(30000, 200 + k));
    CHECK_FALSE(r.predicted_p.has_value());
    const double exact = prob(condition_seq(mu, tests), target);
    CHECK(std::abs(r.empirical_p - exact) <= 4 * r.std_error);
  }
}

TEST_CASE("classical chains") {
  const auto sp = std::make_shared<const SampleSpace>(6);
  const auto even = BooleanEvent::from_indices(sp, {1, 3, 5});
  const auto two = BooleanEvent::from_indices(sp, {1});
  const BooleanEvent tests[] = {even};
  const auto r = sample_chain(ClassicalState::uniform(sp), tests, two, config(30000));
  CHECK(std::abs(r.empirical_p - 1.0 / 3) <= 4 * r.std_error);
  CHECK_FALSE(r.predicted_p.has_value());
  const Event etests[] = {even};
  CHECK(sample_chain(State(ClassicalState::uniform(sp)), etests, Event(two), config(30000)) == r);
}

TEST_CASE("state independence check") {
  random::Engine rng(5);
  std::vector<DensityState> states;
  for (int k = 0; k < 5; ++k) states.emplace_back(random::density(4, rng));
  const QuantumEvent tests[] = {testing::pair_e()};
  const auto rep = state_independence_check(testing::pair_f(), tests, states, config(20000));
  CHECK(rep.pass);
  CHECK(rep.predicted == doctest::Approx(0.5));
  CHECK(rep.runs.size() == 5);

  // Starting in an atom below the single test: every trial passes it.
  const auto f = testing::pair_e();
  const auto d = atom({1, 1, 0, 0});
  const DensityState at[] = {atom_state(d)};
  const QuantumEvent only_f[] = {f};
  const auto rep2 = state_independence_check(f, only_f, at, config(1000));
  CHECK(rep2.runs[0].all_yes_count == 1000);
  CHECK(rep2.pass);

  random::Engine rng2(6);
  const QuantumEvent generic[] = {QuantumEvent(random::projection(4, 2, rng2))};
  CHECK(kind_of([&] {
          (void)state_independence_check(QuantumEvent(random::projection(4, 2, rng2)), generic, states, config(10));
        }) == ErrorKind::NotPredictable);
  const DensityState blind[] = {atom_state(atom({0, 0, 1, 0}))};
  CHECK(kind_of([&] { (void)state_independence_check(testing::pair_f(), tests, blind, config(10)); }) ==
        ErrorKind::ZeroProbabilityCondition);
}

TEST_CASE("chain errors") {
  CHECK(kind_of([] {
          (void)sample_chain(DensityState::maximally_mixed(2), std::span<const QuantumEvent>{}, atom({1, 0}),
                             config(10));
        }) == ErrorKind::EmptyChain);
  const QuantumEvent tests[] = {atom({1, 0})};
  CHECK(kind_of([&] { (void)sample_chain(DensityState::maximally_mixed(2), tests, atom({1, 0}), config(0)); }) ==
        ErrorKind::InvalidValue);
  const Event mixed[] = {atom({1, 0})};
  const auto sp = std::make_shared<const SampleSpace>(2);
  CHECK(kind_of([&] {
          (void)sample_chain(State(ClassicalState::uniform(sp)), mixed, Event(atom({1, 0})), config(10));
        }) == ErrorKind::AlgebraMismatch);

  // No trial survives: the estimate is undefined rather than zero.
  const QuantumEvent dead[] = {atom({1, 0}), atom({0, 1})};
  const auto r = sample_chain(DensityState::maximally_mixed(2), dead, atom({1, 0}), config(100));
  CHECK(r.all_yes_count == 0);
  CHECK(std::isnan(r.empirical_p));
}
