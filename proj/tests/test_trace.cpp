// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include <algorithm>

#include "cqg/error.hpp"
#include "cqg/quotient.hpp"
#include "cqg/trace.hpp"
#include "support.hpp"

using namespace cqg;
using cqg::testing::el;
using cqg::testing::el_star;
using cqg::testing::one_block;
using cqg::testing::u;

namespace {

Word sq(const GeneratorId& g) { return nonnegative_symbol(g); }

std::vector<GeneratorId> forced_of(const BlockSpec& s) { return kac_fixpoint(build_from_spec(s)).first.forced; }

}  // namespace

TEST_CASE("cyclic canonical symbols") {
  const CanonicalTrace a = cyclic_canonical(Word{u(1, 1).adjoint(), u(1, 1)});
  const CanonicalTrace b = cyclic_canonical(Word{u(1, 1), u(1, 1).adjoint()});
  CHECK(a.symbol == b.symbol);
  CHECK(a.real);
  CHECK(cyclic_canonical(Word{}).symbol.empty());

  const CanonicalTrace w = cyclic_canonical(Word{u(1, 2), u(2, 1)});
  const CanonicalTrace v = cyclic_canonical(Word{u(2, 1).adjoint(), u(1, 2).adjoint()});
  CHECK(w.symbol == v.symbol);
  CHECK_FALSE(w.real);
  CHECK(w.imag_sign == -v.imag_sign);
}

TEST_CASE("trace of elements") {
  CHECK(trace_of(el(1, 1) * el_star(1, 1) - el_star(1, 1) * el(1, 1)).is_zero());
  const TraceExpr one = trace_of(AlgElement::scalar(1));
  CHECK(one.constant == 1);
  CHECK(one.re.empty());

  const AlgMatrix m = AlgMatrix::generic(2, 2);
  const AlgElement entry = (m.star() * m).at(0, 0) - AlgElement::scalar(1);
  const TraceExpr t = trace_of(entry);
  CHECK(t.constant == -1);
  CHECK(t.re.size() == 2);
  CHECK(t.re.at(sq(u(1, 1))) == 1);
  CHECK(t.re.at(sq(u(2, 1))) == 1);
  CHECK(t.im.empty());
}

TEST_CASE("printing of trace expressions") {
  TraceExpr e;
  CHECK(to_string(e) == "0");
  e.re[sq(u(2, 1))] = Rational(15, 16);
  CHECK(to_string(e) == "15/16 Re(u[2,1] u[2,1]*)");
  e.re[sq(u(2, 1))] = -1;
  CHECK(to_string(e) == "-Re(u[2,1] u[2,1]*)");
}

TEST_CASE("one-block derived system implies (1 - q^4) tau(C* C) = 0") {
  const Presentation p = canonicalize(reduce_reality(build_from_spec(one_block(Rational(1, 2), 1))));
  const TraceEquationSet eqs = derive_trace_equations(p);
  const ForcedZeroSolver solver(eqs);
  TraceExpr e;
  e.re[sq(u(2, 1))] = Rational(15, 16);
  const auto c = solver.span_combination(e);
  REQUIRE(c.has_value());
  TraceExpr sum;
  for (const auto& [i, m] : *c) sum.add(eqs.equations[i].expr, m);
  CHECK(sum == e);

  const auto cert = solver.forced_zero(sq(u(2, 1)));
  REQUIRE(cert.has_value());
  CHECK(verify_certificate(eqs, *cert));
  CHECK(cert->combination.constant == 0);
  CHECK(cert->combination.re.at(sq(u(2, 1))) == Rational(15, 16));
}

TEST_CASE("no forced zero for the identity twist") {
  const Presentation p = build_universal_unitary(ScalarMatrix::identity(2));
  const TraceEquationSet eqs = derive_trace_equations(p);
  CHECK_FALSE(forced_zero(eqs, sq(u(1, 1))).has_value());
  CHECK_FALSE(forced_zero(eqs, sq(u(1, 2))).has_value());
}

TEST_CASE("case II A_12 is forced") {
  const BlockSpec s{BlockKind::CaseII, {{Rational(1, 2), 1}, {Rational(1), 1}}, 0, 1};
  const Presentation p = canonicalize(reduce_reality(build_from_spec(s)));
  const BlockDecomposition b = block_decompose(p, s);
  const AlgElement a12 = b.at("A[1,2]").at(0, 0);
  REQUIRE(a12.size() == 1);
  const GeneratorId g = a12.leading_word()[0].plain();
  const auto cert = forced_zero(derive_trace_equations(p), sq(g));
  REQUIRE(cert.has_value());
  const auto forced = kac_fixpoint(p).first.forced;
  CHECK(std::find(forced.begin(), forced.end(), g) != forced.end());
}

TEST_CASE("tampered certificates are rejected") {
  const Presentation p = canonicalize(reduce_reality(build_from_spec(one_block(Rational(1, 3), 1, -1))));
  const TraceEquationSet eqs = derive_trace_equations(p);
  auto cert = forced_zero(eqs, sq(u(2, 1)));
  REQUIRE(cert.has_value());
  REQUIRE(verify_certificate(eqs, *cert));
  Certificate bad = *cert;
  bad.terms.front().second += 1;
  std::string why;
  CHECK_FALSE(verify_certificate(eqs, bad, &why));
  CHECK_FALSE(why.empty());
  bad = *cert;
  bad.target = sq(u(1, 1));
  CHECK_FALSE(verify_certificate(eqs, bad));
}

TEST_CASE("kac fixpoint examples") {
  SUBCASE("one block M=2 kills the C block in one round") {
    for (int eps : {1, -1}) {
      const auto [report, q] = kac_fixpoint(build_from_spec(one_block(Rational(1, 2), 2, eps)));
      CHECK(report.forced == std::vector<GeneratorId>{u(3, 1), u(3, 2), u(4, 1), u(4, 2)});
      CHECK(report.rounds == 2);
      CHECK(report.undetermined.empty());
      for (const auto& fg : report.certificates) {
        CHECK(fg.round == 1);
        CHECK(reverify(fg));
      }
    }
  }
  SUBCASE("unitary diag(1/4, 1, 1) kills the cross-block generators") {
    const auto forced = forced_of({BlockKind::Unitary, {{Rational(1, 4), 1}, {Rational(1), 2}}, 0, 1});
    CHECK(forced == std::vector<GeneratorId>{u(1, 2), u(1, 3), u(2, 1), u(3, 1)});
  }
  SUBCASE("identity twist kills nothing") {
    const auto [report, q] = kac_fixpoint(build_universal_unitary(ScalarMatrix::identity(3)));
    CHECK(report.forced.empty());
    CHECK(report.rounds == 1);
    CHECK(q.generators.size() == 9);
  }
  SUBCASE("case I N=7 kills C, X, R and off-diagonal A") {
    const BlockSpec s{BlockKind::CaseI, {{Rational(1, 3), 1}, {Rational(1, 2), 2}}, 1, 1};
    const Presentation p = build_from_spec(s);
    const auto [report, q] = kac_fixpoint(p);
    CHECK(report.rounds <= 3);
    const Presentation reduced = canonicalize(reduce_reality(p));
    const BlockDecomposition b = block_decompose(reduced, s);
    std::set<GeneratorId> expected;
    for (const auto& [name, m] : b) {
      const bool off_diagonal_a = name.rfind("A[", 0) == 0 && name[2] != name[4];
      const bool killed = name[0] == 'C' || name[0] == 'X' || name[0] == 'R' || off_diagonal_a;
      if (!killed) continue;
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
          for (const auto& g : m.at(i, j).generators())
            if (reduced.has_generator(g)) expected.insert(g);
    }
    CHECK(std::set<GeneratorId>(report.forced.begin(), report.forced.end()) == expected);
  }
}

TEST_CASE("kac fixpoint refuses a non-monomial F") {
  Presentation p = build_universal_orthogonal(ScalarMatrix{{1, 1}, {0, -1}});
  CHECK_THROWS_AS(kac_fixpoint(p), Error);
}
