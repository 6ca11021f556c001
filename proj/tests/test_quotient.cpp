// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include "cqg/error.hpp"
#include "cqg/quotient.hpp"
#include "cqg/trace.hpp"
#include "support.hpp"

using namespace cqg;
using cqg::testing::el;
using cqg::testing::el_star;
using cqg::testing::one_block;
using cqg::testing::same_relations;
using cqg::testing::u;

namespace {

Renaming identity_on(const Presentation& p) {
  Renaming r;
  for (const auto& g : p.generators) r.map[g] = g;
  return r;
}

MatchVerdict match_kac(const BlockSpec& s) {
  const auto [report, q] = kac_fixpoint(build_from_spec(s));
  const KacTarget t = expected_kac_target(s);
  return match_presentations(q, t.target, t.renaming);
}

}  // namespace

TEST_CASE("quotient by zero") {
  const Presentation p = reduce_reality(build_from_spec(one_block(Rational(1, 2), 1)));
  CHECK(same_relations(quotient_by_zero(p, {}), p));
  const Presentation q = canonicalize(quotient_by_zero(p, {u(2, 1)}));
  CHECK(q.generators == std::vector<GeneratorId>{u(1, 1)});
  const Presentation u1 = canonicalize(build_universal_unitary(ScalarMatrix::identity(1)));
  std::set<std::string> ours;
  std::set<std::string> expected;
  for (const auto& r : q.relations) ours.insert(to_string(r.expr));
  for (const auto& r : u1.relations) expected.insert(to_string(r.expr));
  CHECK(ours == expected);
  CHECK_THROWS_AS(quotient_by_zero(p, {u(5, 5)}), Error);
}

TEST_CASE("case I with one block: killing C, X, R leaves A unitary and Z orthogonal") {
  const BlockSpec s{BlockKind::CaseI, {{Rational(1, 2), 1}}, 1, 1};
  const auto [report, q] = kac_fixpoint(build_from_spec(s));
  CHECK(q.generators == std::vector<GeneratorId>{u(1, 1), u(3, 3)});
  bool hermitian = false;
  bool z_square = false;
  for (const auto& r : q.relations) {
    const AlgElement& e = r.expr;
    if (e == el(3, 3) - el_star(3, 3) || e == el_star(3, 3) - el(3, 3)) hermitian = true;
    if (e.coefficient(Word{u(3, 3).adjoint(), u(3, 3)}) != 0 && e.size() == 2) z_square = true;
  }
  CHECK(hermitian);
  CHECK(z_square);
}

TEST_CASE("normalize and canonicalize") {
  const AlgElement r = el_star(1, 1) * el(1, 1) - AlgElement::scalar(1);
  CHECK(normalize_relation(Rational(2) * r) == normalize_relation(r));
  CHECK(normalize_relation(r).coefficient(Word{}) == 1);
  Presentation p;
  p.relations = {{Rational(2) * r, "b"}, {r, "a"}, {r.adjoint() * Rational(-3), "c"}};
  const Presentation c = canonicalize(p);
  REQUIRE(c.relations.size() == 1);
  CHECK(c.relations.front().label == "a");
  CHECK(same_relations(canonicalize(c), c));
}

TEST_CASE("expected targets") {
  SUBCASE("one block") {
    const KacTarget t = expected_kac_target(one_block(Rational(1, 3), 2, -1));
    CHECK(t.target.title == "Pol(U_2^+)");
    CHECK(t.target.generators.size() == 4);
  }
  SUBCASE("case I") {
    const KacTarget t = expected_kac_target({BlockKind::CaseI, {{Rational(1, 3), 1}, {Rational(1, 2), 2}}, 1, 1});
    CHECK(t.target.title == "U_1^+ * U_2^+ * O_1^+");
    CHECK(t.target.generators.size() == 6);
    CHECK(t.renaming.is_injective());
  }
  SUBCASE("case II") {
    const KacTarget t = expected_kac_target({BlockKind::CaseII, {{Rational(1, 2), 1}, {Rational(1), 1}}, 0, 1});
    CHECK(t.target.title == "U_1^+ * O_{J_1}^+");
    const KacTarget v = expected_kac_target({BlockKind::CaseII, {{Rational(1, 3), 1}, {Rational(1, 2), 1}}, 0, 1});
    CHECK(v.target.title == "U_1^+ * U_1^+");
  }
}

TEST_CASE("matching") {
  SUBCASE("self match with the identity renaming") {
    const Presentation p = canonicalize(build_universal_unitary(ScalarMatrix::identity(2)));
    const MatchVerdict v = match_presentations(p, p, identity_on(p));
    CHECK(v.matched);
    CHECK(v.mode == MatchMode::ExactSet);
  }
  SUBCASE("derived quotients match their targets") {
    for (const BlockSpec& s : {one_block(Rational(1, 2), 2), BlockSpec{BlockKind::CaseII, {{Rational(1, 2), 1}, {Rational(1), 1}}, 0, 1}}) {
      const MatchVerdict v = match_kac(s);
      CHECK(v.matched);
      CHECK(to_string(v.mode) == "exact-set");
    }
  }
  SUBCASE("a missing relation is reported") {
    const Presentation p = canonicalize(build_universal_unitary(ScalarMatrix::identity(1)));
    Presentation fewer = p;
    fewer.relations.pop_back();
    const MatchVerdict v = match_presentations(fewer, p, identity_on(p));
    CHECK_FALSE(v.matched);
    CHECK(v.unmatched_target.size() == 1);
  }
  SUBCASE("an incomplete renaming is reported") {
    const Presentation p = canonicalize(build_universal_unitary(ScalarMatrix::identity(2)));
    Renaming r = identity_on(p);
    r.map.erase(u(2, 2));
    const MatchVerdict v = match_presentations(p, p, r);
    CHECK_FALSE(v.matched);
    CHECK(v.unmapped == std::vector<GeneratorId>{u(2, 2)});
  }
  SUBCASE("a non-injective renaming is refused") {
    const Presentation p = canonicalize(build_universal_unitary(ScalarMatrix::identity(2)));
    Renaming r = identity_on(p);
    r.map[u(2, 2)] = u(1, 1);
    CHECK_THROWS_AS(match_presentations(p, p, r), Error);
  }
}

TEST_CASE("ideal membership") {
  const Presentation p = canonicalize(build_universal_unitary(ScalarMatrix::identity(2)));
  std::vector<AlgElement> rels;
  for (const auto& r : p.relations) rels.push_back(r.expr);
  for (const auto& r : rels) CHECK(ideal_membership_bounded(r, rels, 2));
  CHECK(ideal_membership_bounded(el(1, 1) * rels.front() * el(1, 2), rels, 4));
  CHECK_FALSE(ideal_membership_bounded(el(1, 1), rels, 4));
  CHECK_FALSE(ideal_membership_bounded(AlgElement::scalar(1), rels, 4));
  CHECK_THROWS_AS(ideal_membership_bounded(el(1, 1) * rels.front() * el(1, 2), rels, 3), Error);
  MembershipOptions tiny;
  tiny.bound = 4;
  tiny.budget = 1;
  CHECK(ideal_membership(el(1, 1) * rels.front() * el(1, 2) + el(2, 2) * rels.back(), rels, tiny) ==
        Membership::Inconclusive);
}
