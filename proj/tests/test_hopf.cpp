// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include "cqg/error.hpp"
#include "cqg/hopf.hpp"
#include "cqg/quotient.hpp"
#include "support.hpp"

using namespace cqg;
using cqg::testing::el;
using cqg::testing::el_star;
using cqg::testing::symplectic;
using cqg::testing::u;

namespace {

std::size_t failures(const HopfReport& r) { return r.results.size() - r.count(CheckStatus::Pass); }

}  // namespace

TEST_CASE("coproduct on U_2^+") {
  const Presentation p = build_universal_unitary(ScalarMatrix::identity(2));
  CHECK(coproduct(p, el(1, 1)) == Tensor::product(el(1, 1), el(1, 1)) + Tensor::product(el(1, 2), el(2, 1)));
  CHECK(coproduct(p, AlgElement::scalar(1)) == Tensor::product(AlgElement::scalar(1), AlgElement::scalar(1)));

  const Tensor d = coproduct(p, el_star(1, 1) * el(1, 2));
  CHECK(d.size() == 4);
  Tensor expected;
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b)
      expected += Tensor::product(el_star(1, a) * el(1, b), el_star(a, 1) * el(b, 2));
  CHECK(d == expected);
}

TEST_CASE("counit and antipode") {
  const Presentation p = build_universal_unitary(ScalarMatrix::identity(2));
  CHECK(counit(p, el(1, 2)) == 0);
  CHECK(counit(p, el(1, 1)) == 1);
  CHECK(counit(p, el_star(2, 2) * el(1, 1)) == 1);
  CHECK(antipode(p, el(1, 2)) == el_star(2, 1));
  CHECK(antipode(p, el_star(1, 2)) == el(2, 1));
  // m (S (x) id) Delta(u_11) = sum_l u*_l1 u_l1.
  const AlgElement left = multiply_with_antipode(p, coproduct(p, el(1, 1)), 0);
  CHECK(left == el_star(1, 1) * el(1, 1) + el_star(2, 1) * el(2, 1));
}

TEST_CASE("antipode with a twist") {
  // S(u*_jk) = (Q^-1 U^t Q)_jk.
  const Presentation p = build_universal_unitary(ScalarMatrix::diagonal({Rational(1, 4), 4}));
  CHECK(antipode(p, el_star(1, 2)) == Rational(16) * el(2, 1));
  CHECK(antipode(p, el_star(2, 1)) == Rational(1, 16) * el(1, 2));
  CHECK(antipode(p, el_star(1, 1)) == el(1, 1));
}

TEST_CASE("Hopf axioms") {
  SUBCASE("U_1^+ needs bound 4 for its relations") {
    HopfOptions o;
    o.bound = 2;
    const HopfReport low = hopf_axiom_check(build_universal_unitary(ScalarMatrix::identity(1)), o);
    CHECK(low.count(CheckStatus::Fail) == 0);
    CHECK(low.count(CheckStatus::Inconclusive) > 0);
    o.bound = 4;
    CHECK(hopf_axiom_check(build_universal_unitary(ScalarMatrix::identity(1)), o).all_pass());
  }
  SUBCASE("U_2^+ coassociativity") {
    const HopfReport r = hopf_axiom_check(build_universal_unitary(ScalarMatrix::identity(2)));
    CHECK(r.count(CheckStatus::Pass) == r.results.size());
    std::size_t coassoc = 0;
    for (const auto& x : r.results) coassoc += x.axiom == "coassociativity";
    CHECK(coassoc == 8);
  }
  SUBCASE("O_{J_1}^+ including relation preservation") {
    const HopfReport r = hopf_axiom_check(build_universal_orthogonal(symplectic(1)));
    CHECK(failures(r) == 0);
  }
  SUBCASE("a twisted U_Q^+") {
    const HopfReport r = hopf_axiom_check(build_universal_unitary(ScalarMatrix::diagonal({Rational(1, 4), 4})));
    CHECK(failures(r) == 0);
  }
}

TEST_CASE("relation preservation detects a bad relation") {
  const Presentation p = build_universal_unitary(ScalarMatrix::identity(2));
  // u_12 = 0 is not a Hopf ideal relation: Delta(u_12) = u_11 (x) u_12 + u_12 (x) u_22.
  CHECK(coproduct_preserves(p, el(1, 2), 4) == CheckStatus::Inconclusive);
  CHECK(coproduct_preserves(p, p.relations.front().expr, 4) == CheckStatus::Pass);
}

TEST_CASE("tensor algebra") {
  const Tensor a = Tensor::product(el(1, 1), el(1, 2));
  const Tensor b = Tensor::product(el(2, 1), el(2, 2));
  CHECK((a * b) == Tensor::product(el(1, 1) * el(2, 1), el(1, 2) * el(2, 2)));
  CHECK(flip(a) == Tensor::product(el(1, 2), el(1, 1)));
  CHECK((a - a).is_zero());
  CHECK(a.coefficient({Word{u(1, 1)}, Word{u(1, 2)}}) == 1);
}

TEST_CASE("central morphism") {
  const Presentation j1 = build_universal_orthogonal(symplectic(1));
  const Presentation j2 = build_universal_orthogonal(symplectic(2));
  CHECK(central_morphism_check(j1));
  CHECK(central_morphism_check(j2));
  Z2Morphism bad = central_morphism(j1);
  bad[u(1, 1)] = {0, 1};
  bad[u(2, 2)] = {1, 0};
  CHECK_FALSE(central_morphism_check(j1, bad));
  CHECK_THROWS_AS(central_morphism(build_universal_unitary(ScalarMatrix::identity(2))), Error);

  CHECK(hopf_kernel_membership(j1, el_star(1, 1) * el(1, 2)));
  CHECK_FALSE(hopf_kernel_membership(j1, el(1, 1)));
  CHECK(hopf_kernel_membership(j1, AlgElement::scalar(1)));
  const Z2Element t = apply_morphism(central_morphism(j1), el(1, 1) * el(2, 2));
  CHECK(t == Z2Element{1, 0});
}
