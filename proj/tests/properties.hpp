// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

// Randomized property suites. Each returns the number of cases checked and
// the first counterexample, if any.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cqg/quotient.hpp"
#include "cqg/trace.hpp"
#include "support.hpp"

namespace cqg::testing {

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0; }
  void record(bool pass, const std::string& what) {
    ++cases;
    if (pass) return;
    if (failures++ == 0) first_failure = what;
  }
};

inline PropertyResult adjoint_laws(std::uint64_t seed, int cases) {
  PropertyResult out{"adjoint involution and anti-multiplicativity"};
  Gen gen(seed);
  for (int i = 0; i < cases; ++i) {
    const AlgElement a = gen.element(3, 4, 3, 2);
    const AlgElement b = gen.element(3, 4, 3, 2);
    const bool pass = a.adjoint().adjoint() == a && (a * b).adjoint() == b.adjoint() * a.adjoint() &&
                      (a + b).adjoint() == a.adjoint() + b.adjoint();
    out.record(pass, "a = " + to_string(a) + ", b = " + to_string(b));
  }
  return out;
}

inline PropertyResult trace_cyclicity(std::uint64_t seed, int cases) {
  PropertyResult out{"cyclic trace invariance"};
  Gen gen(seed);
  for (int i = 0; i < cases; ++i) {
    const AlgElement a = gen.element(3, 4, 3);
    const AlgElement b = gen.element(3, 4, 3);
    // tau(a*) is the complex conjugate of tau(a).
    TraceExpr conj = trace_of(a);
    for (auto& [w, c] : conj.im) c = -c;
    const bool pass = trace_of(a * b) == trace_of(b * a) && trace_of(a.adjoint()) == conj;
    out.record(pass, "a = " + to_string(a) + ", b = " + to_string(b));
  }
  return out;
}

// Every certificate emitted by the fixpoint on random specs re-verifies from
// its cited equations alone, and a perturbed multiplier never does.
inline PropertyResult certificate_verification(std::uint64_t seed, int cases) {
  PropertyResult out{"certificate self-verification"};
  Gen gen(seed);
  for (int attempt = 0; out.cases < cases && attempt < 10 * cases; ++attempt) {
    const BlockSpec spec = gen.spec();
    const auto [report, q] = kac_fixpoint(build_from_spec(spec));
    for (const auto& fg : report.certificates) {
      std::string why;
      const bool pass = reverify(fg, &why);
      out.record(pass, to_string(fg.generator) + " in " + to_string(spec.kind) + ": " + why);
      if (fg.certificate.terms.empty()) continue;
      ForcedGenerator bad = fg;
      auto& term = bad.certificate.terms[static_cast<std::size_t>(gen.uniform(0, static_cast<int>(bad.certificate.terms.size()) - 1))];
      term.second += gen.rational();
      out.record(!reverify(bad), "perturbed certificate for " + to_string(fg.generator) + " still verifies");
    }
  }
  return out;
}

// Reduced presentations of a handful of specs, shared by the quotient suites.
inline std::vector<Presentation> presentation_pool(Gen& gen, int size) {
  std::vector<Presentation> pool;
  for (int i = 0; i < size; ++i) pool.push_back(canonicalize(reduce_reality(build_from_spec(gen.spec()))));
  return pool;
}

inline PropertyResult quotient_composition(std::uint64_t seed, int cases) {
  PropertyResult out{"quotient composition law"};
  Gen gen(seed);
  const std::vector<Presentation> pool = presentation_pool(gen, 24);
  for (int i = 0; i < cases; ++i) {
    const Presentation& p = gen.pick(pool);
    std::vector<GeneratorId> a;
    std::vector<GeneratorId> b;
    for (const auto& g : p.generators) {
      const int slot = gen.uniform(0, 3);
      if (slot == 0) a.push_back(g);
      if (slot == 1) b.push_back(g);
    }
    std::vector<GeneratorId> both = a;
    both.insert(both.end(), b.begin(), b.end());
    const Presentation stepwise = quotient_by_zero(quotient_by_zero(p, a), b);
    const Presentation at_once = quotient_by_zero(p, both);
    const bool pass = same_relations(stepwise, at_once) && stepwise.layout == at_once.layout &&
                      same_relations(canonicalize(stepwise), canonicalize(at_once));
    out.record(pass, p.title + " with " + std::to_string(a.size()) + "+" + std::to_string(b.size()) + " generators");
  }
  return out;
}

inline PropertyResult canonicalize_idempotence(std::uint64_t seed, int cases) {
  PropertyResult out{"canonicalize idempotence"};
  Gen gen(seed);
  const std::vector<Presentation> pool = presentation_pool(gen, 24);
  for (int i = 0; i < cases; ++i) {
    Presentation p = gen.pick(pool);
    // Scaled copies, adjoints and fresh random relations.
    const int extra = gen.uniform(0, 6);
    for (int k = 0; k < extra; ++k) {
      if (!p.relations.empty() && gen.coin()) {
        const Relation& r = gen.pick(p.relations);
        const AlgElement e = gen.coin() ? r.expr.adjoint() : r.expr;
        p.relations.push_back({gen.rational() * e, "copy" + std::to_string(k)});
      } else {
        p.relations.push_back({gen.element(2, 3, 3), "random" + std::to_string(k)});
      }
    }
    std::shuffle(p.relations.begin(), p.relations.end(), gen.engine());
    const Presentation once = canonicalize(p);
    const Presentation twice = canonicalize(once);
    bool sorted = true;
    for (std::size_t k = 1; k < once.relations.size(); ++k)
      sorted = sorted && compare(once.relations[k - 1].expr, once.relations[k].expr) < 0;
    out.record(same_relations(once, twice) && sorted, p.title + " with " + std::to_string(extra) + " extra relations");
  }
  return out;
}

// On fixed relation sets: membership at bound d implies membership at d+1.
inline PropertyResult membership_monotonicity(std::uint64_t seed, int cases) {
  PropertyResult out{"ideal-membership monotonicity in the degree bound"};
  Gen gen(seed);
  std::vector<std::vector<AlgElement>> instances;
  std::vector<std::vector<GeneratorId>> alphabets;
  for (const Presentation& p : {canonicalize(build_universal_unitary(ScalarMatrix::identity(1))),
                                canonicalize(reduce_reality(build_universal_orthogonal(ScalarMatrix::identity(1)))),
                                canonicalize(build_universal_unitary(ScalarMatrix::identity(2))),
                                canonicalize(reduce_reality(build_universal_orthogonal(symplectic(1))))}) {
    std::vector<AlgElement> rels;
    for (const auto& r : p.relations) rels.push_back(r.expr);
    instances.push_back(std::move(rels));
    alphabets.push_back(p.generators);
  }
  constexpr int kTop = 4;
  for (int i = 0; i < cases; ++i) {
    const std::size_t which = static_cast<std::size_t>(gen.uniform(0, static_cast<int>(instances.size()) - 1));
    const auto& rels = instances[which];
    const auto& alphabet = alphabets[which];
    // Half the cases are ideal elements a r b, the rest a perturbation.
    AlgElement x;
    const int terms = gen.uniform(1, 2);
    for (int t = 0; t < terms; ++t) {
      const AlgElement& r = gen.pick(rels);
      const Word left = gen.word_over(alphabet, 1);
      const Word right = gen.word_over(alphabet, 1);
      x += gen.rational() * (AlgElement::monomial(left) * r * AlgElement::monomial(right));
    }
    if (gen.coin()) x += gen.element_over(alphabet, 1, 2);
    if (x.is_zero() || static_cast<int>(x.degree()) > kTop) {
      --i;
      continue;
    }
    bool previous = false;
    bool pass = true;
    for (int d = std::max<int>(1, static_cast<int>(x.degree())); d <= kTop; ++d) {
      const bool member = ideal_membership_bounded(x, rels, d);
      if (previous && !member) pass = false;
      previous = member;
    }
    out.record(pass, "x = " + to_string(x));
  }
  return out;
}

inline std::vector<PropertyResult> all_properties(std::uint64_t seed, int cases) {
  return {adjoint_laws(seed, cases),
          trace_cyclicity(seed + 1, cases),
          certificate_verification(seed + 2, cases),
          quotient_composition(seed + 3, cases),
          canonicalize_idempotence(seed + 4, cases),
          membership_monotonicity(seed + 5, cases)};
}

}  // namespace cqg::testing
