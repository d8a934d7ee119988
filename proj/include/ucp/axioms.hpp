#pragma once

// Randomized checker for the orthospace axioms OS1-OS6 plus the derived
// properties that hold once states separate events (antisymmetry of the
// order, uniqueness of the difference, E ⊥ E iff E = 0).

#include <array>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ucp/events.hpp"
#include "ucp/random.hpp"

namespace ucp {

template <class A>
concept Orthospace = requires(const A& alg, const typename A::event_type& e, random::Engine& rng) {
  { alg.zero() } -> std::same_as<typename A::event_type>;
  { alg.one() } -> std::same_as<typename A::event_type>;
  { alg.orthogonal(e, e) } -> std::same_as<bool>;
  { alg.oplus(e, e) } -> std::same_as<typename A::event_type>;
  { alg.complement(e) } -> std::same_as<typename A::event_type>;
  { alg.below(e, e) } -> std::same_as<bool>;
  { alg.equal(e, e) } -> std::same_as<bool>;
  { alg.difference(e, e) } -> std::same_as<std::optional<typename A::event_type>>;
  { alg.random_event(rng) } -> std::same_as<typename A::event_type>;
  { alg.random_partition(rng, std::size_t{4}) } -> std::same_as<std::vector<typename A::event_type>>;
};

struct AxiomTally {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::vector<std::string> notes;  // first few failure descriptions
};

struct AxiomReport {
  std::vector<AxiomTally> tallies;

  bool ok() const {
    for (const auto& t : tallies)
      if (t.failures != 0) return false;
    return true;
  }
  const AxiomTally& at(const std::string& name) const;
  std::size_t min_trials() const;
};

namespace detail {

class TallyBook {
 public:
  TallyBook() {
    for (const char* n : {"OS1", "OS2", "OS3", "OS4", "OS5", "OS6", "antisymmetry",
                          "self-orthogonal", "difference-unique"}) {
      report_.tallies.push_back({n, 0, 0, {}});
    }
  }

  void check(std::size_t slot, bool holds, const std::string& what, std::size_t iteration) {
    auto& t = report_.tallies[slot];
    ++t.trials;
    if (!holds) {
      ++t.failures;
      if (t.notes.size() < 5) t.notes.push_back("iteration " + std::to_string(iteration) + ": " + what);
    }
  }

  AxiomReport take() { return std::move(report_); }

 private:
  AxiomReport report_;
};

}  // namespace detail

/// Runs `budget` iterations. Each iteration draws a random partition of the
/// unit into four orthogonal blocks plus two unrelated events and checks
/// every axiom on them, so each axiom gets at least `budget` instances whose
/// hypotheses hold.
template <Orthospace A>
AxiomReport verify_orthospace_axioms(const A& alg, std::size_t budget, std::uint64_t seed) {
  enum Slot { kOS1, kOS2, kOS3, kOS4, kOS5, kOS6, kAnti, kSelf, kDiff };
  random::Engine rng(seed);
  detail::TallyBook book;
  const auto zero = alg.zero();
  const auto one = alg.one();

  for (std::size_t it = 0; it < budget; ++it) {
    const auto blocks = alg.random_partition(rng, 4);
    const auto& b0 = blocks[0];
    const auto& b1 = blocks[1];
    const auto& b2 = blocks[2];
    const auto& b3 = blocks[3];
    const auto x = alg.random_event(rng);
    const auto y = alg.random_event(rng);

    // OS1: symmetry of orthogonality, on orthogonal and generic pairs.
    book.check(kOS1, alg.orthogonal(b0, b1) && alg.orthogonal(b1, b0), "b0 ⊥ b1 not symmetric", it);
    book.check(kOS1, alg.orthogonal(x, y) == alg.orthogonal(y, x), "x ⊥ y not symmetric", it);
    book.check(kOS1, alg.orthogonal(x, b2) == alg.orthogonal(b2, x), "x ⊥ b2 not symmetric", it);

    // OS2: sum defined and commutative for orthogonal pairs.
    book.check(kOS2, alg.equal(alg.oplus(b0, b1), alg.oplus(b1, b0)), "b0+b1 != b1+b0", it);

    // OS3: orthogonality passes to sums, sums associate.
    {
      const auto s12 = alg.oplus(b1, b2);
      const auto s01 = alg.oplus(b0, b1);
      const bool holds = alg.orthogonal(b0, s12) && alg.orthogonal(b2, s01) &&
                         alg.equal(alg.oplus(b0, s12), alg.oplus(s01, b2));
      book.check(kOS3, holds, "associativity / orthogonality of sums", it);
    }

    // OS4: 0 is orthogonal to everything and neutral.
    book.check(kOS4, alg.orthogonal(zero, x) && alg.equal(alg.oplus(x, zero), x), "0 not neutral for x", it);

    // OS5: complement exists and is unique among the candidates we can build.
    {
      const auto xc = alg.complement(x);
      book.check(kOS5, alg.orthogonal(x, xc) && alg.equal(alg.oplus(x, xc), one), "x + x' != 1", it);
      const auto rest = alg.oplus(alg.oplus(b1, b2), b3);
      const auto b0c = alg.complement(b0);
      bool holds = alg.orthogonal(b0, rest) && alg.equal(alg.oplus(b0, rest), one) && alg.equal(rest, b0c);
      for (const auto* cand : {&b1, &y, &x}) {
        if (alg.orthogonal(b0, *cand) && alg.equal(alg.oplus(b0, *cand), one)) {
          holds = holds && alg.equal(*cand, b0c);
        }
      }
      book.check(kOS5, holds, "complement of b0 not unique", it);
    }

    // OS6, both directions: E ⊥ F' iff E + D = F for some D ⊥ E.
    {
      const auto f = alg.oplus(b0, b1);
      const auto d = alg.difference(f, b0);
      const bool forward = alg.orthogonal(b0, alg.complement(f)) && d.has_value() &&
                           alg.orthogonal(b0, *d) && alg.equal(alg.oplus(b0, *d), f);
      book.check(kOS6, forward, "b0 ≺ b0+b1 without a difference", it);

      const auto g = alg.oplus(b2, b3);
      book.check(kOS6, alg.orthogonal(b2, alg.complement(g)), "b2 + b3 does not dominate b2", it);

      const bool related = alg.orthogonal(x, alg.complement(y));
      const auto dxy = alg.difference(y, x);
      const bool exists = dxy.has_value() && alg.orthogonal(x, *dxy) && alg.equal(alg.oplus(x, *dxy), y);
      book.check(kOS6, related == exists, "x ⊥ y' disagrees with existence of y - x", it);
    }

    // Antisymmetry of ≺.
    {
      const auto b0z = alg.oplus(b0, zero);
      const bool both = alg.below(b0, b0z) && alg.below(b0z, b0);
      book.check(kAnti, both && alg.equal(b0, b0z), "b0 ≺ b0+0 ≺ b0 but unequal", it);
      if (alg.below(x, y) && alg.below(y, x)) book.check(kAnti, alg.equal(x, y), "x ≺ y ≺ x but unequal", it);
    }

    // E ⊥ E iff E ⊥ 1 iff E = 0.
    {
      const bool x_zero = alg.equal(x, zero);
      book.check(kSelf, alg.orthogonal(x, x) == x_zero && alg.orthogonal(x, one) == x_zero,
                 "x ⊥ x inconsistent with x = 0", it);
      book.check(kSelf, alg.orthogonal(zero, zero) && alg.orthogonal(zero, one), "0 ⊥ 0 fails", it);
    }

    // The difference in OS6 is unique: any D with b0 ⊥ D and b0 + D = b0 + b1 is b1.
    {
      const auto f = alg.oplus(b0, b1);
      const auto d = alg.difference(f, b0);
      bool holds = d.has_value() && alg.equal(*d, b1);
      for (const auto* cand : {&b2, &x, &y}) {
        if (alg.orthogonal(b0, *cand) && alg.equal(alg.oplus(b0, *cand), f)) {
          holds = holds && alg.equal(*cand, b1);
        }
      }
      book.check(kDiff, holds, "difference f - b0 not unique", it);
    }
  }
  return book.take();
}

}  // namespace ucp
