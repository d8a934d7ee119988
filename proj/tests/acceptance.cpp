// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "support.hpp"
#include "ucp/axioms.hpp"
#include "ucp/interference.hpp"
#include "ucp/query.hpp"
#include "ucp/sampler.hpp"

using namespace ucp;
using testing::atom;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double relative(const HermitianOperator& a, const HermitianOperator& b) {
  return frobenius_norm(a - b) / std::max({1.0, frobenius_norm(a), frobenius_norm(b)});
}

// Commuting pair on one random frame; F is never zero.
std::pair<QuantumEvent, QuantumEvent> commuting_pair(std::size_t n, random::Engine& rng) {
  const Matrix frame = random::unitary(n, rng);
  std::vector<std::size_t> a, b;
  std::uniform_int_distribution<int> coin(0, 1);
  for (std::size_t c = 0; c < n; ++c) {
    if (coin(rng)) a.push_back(c);
    if (coin(rng)) b.push_back(c);
  }
  if (b.empty()) b.push_back(n - 1);
  return {QuantumEvent(random::frame_projection(frame, a)), QuantumEvent(random::frame_projection(frame, b))};
}

Outcome rank_two_demo() {
  const auto t0 = Clock::now();
  const auto doc = io::demo_rank_two_pair();
  const double secs = seconds_since(t0);
  const double s = doc["P(F|E)"]["s"].get<double>();
  const double res = doc["P(F|E)"]["residual"].get<double>();
  const bool ok = doc["P(F|E)"]["predictable"].get<bool>() && std::abs(s - 0.5) <= 1e-12 && res <= 1e-12 && secs < 1.0;
  return {ok, fmt("s=%.17g residual=%.3g time=%.3fs", s, res, secs)};
}

Outcome jordan_identities() {
  const auto t0 = Clock::now();
  random::Engine rng(2024);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + k % 5;
    const auto x = random::hermitian(n, rng);
    const auto y = random::hermitian(n, rng);
    const auto z = random::hermitian(n, rng);
    const auto x2 = jordan_product(x, x);
    const auto xyx = triple(x, y, x);
    worst = std::max(worst, relative(jordan_product(x, jordan_product(y, x2)), jordan_product(jordan_product(x, y), x2)));
    worst = std::max(worst, relative(triple(xyx, z, xyx), triple(x, triple(y, triple(x, z, x), y), x)));
    worst = std::max(worst, relative(jordan_product(xyx, xyx), triple(x, triple(y, x2, y), x)));
  }
  const double secs = seconds_since(t0);
  return {worst <= 1e-8 && secs < 5.0, fmt("worst relative residual=%.3g time=%.3fs", worst, secs)};
}

Outcome decomposition_identity() {
  random::Engine rng(7);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 2 + k % 5;
    const auto e = random::projection(n, 1 + k % (n - 1), rng).op();
    const auto f = random::projection(n, 1 + (k / 2) % (n - 1), rng).op();
    const auto ec = HermitianOperator::identity(n) - e;
    const auto rebuilt = quadratic_triple(e, f) + 2.0 * jordan_product(ec, jordan_product(e, f)) + jordan_product(ec, f);
    worst = std::max(worst, frobenius_norm(rebuilt - f) / frobenius_norm(f));
  }
  return {worst <= 1e-10, fmt("worst residual=%.3g", worst)};
}

Outcome compatibility_equivalence() {
  random::Engine rng(11);
  int disagreements = 0, commuting_rejected = 0;
  for (int k = 0; k < 500; ++k) {
    const std::size_t n = 2 + k % 5;
    CompatibilityReport r;
    if (k < 250) {
      const auto [e, f] = commuting_pair(n, rng);
      r = compatibility(e, f);
      if (!r.compatible) ++commuting_rejected;
    } else {
      r = compatibility(QuantumEvent(random::projection(n, 1 + k % (n - 1), rng)),
                        QuantumEvent(random::projection(n, 1 + (k / 2) % (n - 1), rng)));
    }
    if (!r.agree) ++disagreements;
  }
  return {disagreements == 0 && commuting_rejected == 0,
          fmt("disagreements=%d commuting pairs rejected=%d", disagreements, commuting_rejected)};
}

Outcome commuting_predictability() {
  random::Engine rng(13);
  int found = 0, bad = 0, draws = 0;
  while (found < 200 && draws < 100000) {
    ++draws;
    const auto [e, f] = commuting_pair(2 + draws % 5, rng);
    const auto r = predictability(e, f);
    if (!r.predictable) continue;
    ++found;
    if (std::abs(r.s - 1.0) <= 1e-9) {
      if (!below(f, e)) ++bad;
    } else if (std::abs(r.s) <= 1e-9) {
      if (!below(f, complement(e))) ++bad;
    } else {
      ++bad;
    }
  }
  return {found == 200 && bad == 0, fmt("predictable pairs=%d violations=%d (from %d draws)", found, bad, draws)};
}

Outcome state_independence() {
  random::Engine rng(17);
  double worst = 0.0;
  int pairs = 0;
  auto probe = [&](const QuantumEvent& target, const QuantumEvent& given, std::size_t n) {
    const auto r = predictability(target, given);
    if (!r.predictable) return false;
    int used = 0;
    while (used < 10) {
      const DensityState mu(random::density(n, rng));
      if (prob(mu, given) <= 1e-6) continue;
      worst = std::max(worst, std::abs(prob(condition(mu, given), target) - r.s));
      ++used;
    }
    ++pairs;
    return true;
  };
  bool ok = probe(testing::pair_f(), testing::pair_e(), 4);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 3 + k % 3;
    ok = probe(QuantumEvent(random::projection(n, 1 + k % (n - 1), rng)), atom(random::gaussian_vector(n, rng)), n) && ok;
  }
  return {ok && pairs == 21 && worst <= 1e-9, fmt("pairs=%d worst deviation=%.3g", pairs, worst)};
}

Outcome two_slit_checks() {
  const double h = 1 / std::sqrt(2.0);
  const StateVector xi({h, h, 0}), e1({1, 0, 0}), e2({0, 1, 0});
  const double bright = two_slit(xi, e1, e2, StateVector({h, h, 0}));
  const double dark = two_slit(xi, e1, e2, StateVector({h, -h, 0}));
  bool ok = std::abs(bright - 1.0) <= 1e-12 && std::abs(dark) <= 1e-12;

  random::Engine rng(19);
  double worst_sum = 0.0, worst_cross = 0.0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = 3 + k % 3;
    const auto x = random::unit_vector(n, rng);
    const auto a = random::unit_vector(n, rng);
    CVector b = random::gaussian_vector(n, rng);
    const Complex c = inner(a.entries(), b);
    for (std::size_t i = 0; i < n; ++i) b[i] -= c * a[i];
    const double nb = norm(b);
    for (auto& v : b) v /= nb;
    const QuantumEvent p1(a.projector()), p2(StateVector(b).projector());
    const auto r = interference_decomposition(QuantumEvent(x.projector()), p1, p2,
                                              QuantumEvent(random::unit_vector(n, rng).projector()));
    worst_sum = std::max(worst_sum, std::abs(r.p_total - (r.term1 + r.term2 + r.cross)));

    // A detector built on a frame containing both paths commutes with them.
    const Matrix frame = random::unitary(n, rng);
    const std::size_t c1[] = {0}, c2[] = {1}, cf[] = {0, 2};
    const auto rc = interference_decomposition(QuantumEvent(x.projector()),
                                               QuantumEvent(random::frame_projection(frame, c1)),
                                               QuantumEvent(random::frame_projection(frame, c2)),
                                               QuantumEvent(random::frame_projection(frame, cf)));
    worst_cross = std::max(worst_cross, std::abs(rc.cross));
  }
  ok = ok && worst_sum <= 1e-10 && worst_cross <= 1e-10;
  return {ok, fmt("bright=%.17g dark=%.3g worst sum residual=%.3g worst commuting cross=%.3g", bright, dark, worst_sum,
                  worst_cross)};
}

Outcome boolean_reduction() {
  const std::size_t n = 5;
  const auto sp = std::make_shared<const SampleSpace>(n);
  random::Engine rng(23);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int checked = 0;
  for (int k = 0; k < 50; ++k) {
    std::vector<double> w(n);
    double total = 0;
    for (auto& x : w) total += (x = u(rng));
    for (auto& x : w) x /= total;
    const ClassicalState mu(sp, w);
    for (unsigned fm = 1; fm < 32; ++fm) {
      std::vector<bool> fb(n);
      for (std::size_t i = 0; i < n; ++i) fb[i] = fm >> i & 1;
      const BooleanEvent f(sp, fb);
      const auto nu = condition(mu, f);
      for (unsigned em = 0; em < 32; ++em) {
        std::vector<bool> eb(n);
        for (std::size_t i = 0; i < n; ++i) eb[i] = em >> i & 1;
        worst = std::max(worst, std::abs(prob(nu, BooleanEvent(sp, eb)) - oracle::classical_conditional(w, eb, fb)));
        ++checked;
      }
    }
  }
  int wrong = 0;
  for (unsigned em = 0; em < 32; ++em) {
    for (unsigned fm = 1; fm < 32; ++fm) {
      std::vector<bool> eb(n), fb(n);
      for (std::size_t i = 0; i < n; ++i) eb[i] = em >> i & 1, fb[i] = fm >> i & 1;
      const auto r = predictability(BooleanEvent(sp, eb), BooleanEvent(sp, fb));
      const bool inside = (fm & ~em) == 0, outside = (fm & em) == 0;
      if (r.predictable != (inside || outside)) ++wrong;
      if (r.predictable && r.s != (inside ? 1.0 : 0.0)) ++wrong;
    }
  }
  return {worst <= 1e-12 && wrong == 0,
          fmt("conditionals checked=%d worst=%.3g predictability mismatches=%d", checked, worst, wrong)};
}

Outcome order_demo() {
  const auto doc = io::demo_order();
  const double fwd = doc["mu(E|F1,F2)"].get<double>();
  const double rev = doc["mu(E|F2,F1)"].get<double>();
  // Direct two-step Lüders evaluation.
  const double h = 1 / std::sqrt(2.0);
  const auto f1 = oracle::to_eigen(atom({1, 0, 0}).proj());
  const auto f2 = oracle::to_eigen(atom({h, h, 0}).proj());
  const auto e = oracle::to_eigen(atom({0, 1, 0}).proj());
  const oracle::MatrixXc rho = oracle::MatrixXc::Identity(3, 3) / 3.0;
  const double o_fwd = oracle::prob(oracle::lueders(oracle::lueders(rho, f1), f2), e);
  const double o_rev = oracle::prob(oracle::lueders(oracle::lueders(rho, f2), f1), e);
  const bool ok = std::abs(fwd - 0.5) <= 1e-12 && std::abs(rev) <= 1e-12 && std::abs(fwd - o_fwd) <= 1e-12 &&
                  std::abs(rev - o_rev) <= 1e-12;
  return {ok, fmt("mu(E|F1,F2)=%.17g mu(E|F2,F1)=%.3g", fwd, rev)};
}

Outcome sampler_band() {
  SamplerConfig cfg;
  cfg.trials = 200000;
  cfg.seed = 42;
  cfg.threads = 1;
  const QuantumEvent tests[] = {testing::pair_e()};
  const auto mu = DensityState::maximally_mixed(4);
  const auto t0 = Clock::now();
  const auto a = sample_chain(mu, tests, testing::pair_f(), cfg);
  const double secs = seconds_since(t0);
  const auto b = sample_chain(mu, tests, testing::pair_f(), cfg);
  const double band = 4 * std::sqrt(0.25 / double(a.all_yes_count));
  const bool identical = a == b && std::memcmp(&a.empirical_p, &b.empirical_p, sizeof(double)) == 0;
  const bool ok = a.all_yes_count > 0 && std::abs(a.empirical_p - 0.5) <= band && identical && secs < 10.0;
  return {ok, fmt("empirical=%.6f band=%.6f all_yes=%zu identical=%d time=%.3fs", a.empirical_p, band,
                  a.all_yes_count, int(identical), secs)};
}

Outcome qubit_demo() {
  const auto doc = io::demo_qubit();
  bool ok = doc["cases"].size() == 2;
  for (const auto& c : doc["cases"]) {
    ok = ok && c["lueders_is_state"]["ok"].get<bool>() && c["alternative_is_state"]["ok"].get<bool>() &&
         c["lueders_is_conditional"]["ok"].get<bool>() && c["alternative_is_conditional"]["ok"].get<bool>() &&
         c["lueders_table"]["G"] != c["alternative_table"]["G"];
  }
  return {ok, fmt("G values: %.3f vs %.3f, %.3f vs %.3f", doc["cases"][0]["lueders_table"]["G"].get<double>(),
                  doc["cases"][0]["alternative_table"]["G"].get<double>(),
                  doc["cases"][1]["lueders_table"]["G"].get<double>(),
                  doc["cases"][1]["alternative_table"]["G"].get<double>())};
}

Outcome axiom_harness() {
  std::size_t failures = 0, min_trials = SIZE_MAX;
  auto take = [&](const AxiomReport& r) {
    for (const auto& t : r.tallies) failures += t.failures;
    min_trials = std::min(min_trials, r.min_trials());
  };
  for (std::size_t n = 2; n <= 6; ++n) take(verify_orthospace_axioms(BooleanAlgebra(SampleSpace(n)), 1000, 40 + n));
  for (std::size_t n : {3, 4, 6}) take(verify_orthospace_axioms(QuantumAlgebra(n), 1000, 50 + n));
  return {failures == 0 && min_trials >= 1000, fmt("failures=%zu min instances per axiom=%zu", failures, min_trials)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"rank-two pair demo reports P(F|E) = 0.5", rank_two_demo},
      {"Jordan and triple-product identities", jordan_identities},
      {"decomposition identity on projection pairs", decomposition_identity},
      {"commutator and total-probability tests agree", compatibility_equivalence},
      {"predictable commuting pairs are trivial", commuting_predictability},
      {"conditional probability is state-independent", state_independence},
      {"two-slit values and decomposition", two_slit_checks},
      {"Boolean reduction", boolean_reduction},
      {"order dependence demo", order_demo},
      {"sampler statistics and determinism", sampler_band},
      {"qubit conditional tables are not unique", qubit_demo},
      {"orthospace axiom harness", axiom_harness},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome out{false, ""};
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    if (!out.pass) ++failed;
    std::printf("[%s] criterion %2zu: %s (%s)\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                out.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
