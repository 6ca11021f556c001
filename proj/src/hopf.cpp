// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

#include "cqg/hopf.hpp"

#include <functional>
#include <optional>
#include <utility>

#include "cqg/error.hpp"
#include "cqg/quotient.hpp"
#include "cqg/span.hpp"

namespace cqg {

namespace {

struct Position {
  std::size_t row;
  std::size_t col;
  const Factor* factor;
};

Position locate(const Presentation& p, const GeneratorId& g) {
  const auto pos = p.position_of(g.plain());
  if (!pos) fail(ErrorKind::InvalidArgument, "letter " + to_string(g) + " is not an entry of the fundamental layout");
  for (const auto& f : p.factors) {
    if (pos->first >= f.offset && pos->first < f.offset + f.size && pos->second >= f.offset &&
        pos->second < f.offset + f.size) {
      return {pos->first, pos->second, &f};
    }
  }
  fail(ErrorKind::InvalidArgument, "letter " + to_string(g) + " lies outside every factor block");
}

Tensor coproduct_letter(const Presentation& p, const GeneratorId& g) {
  const Position pos = locate(p, g);
  Tensor out(2);
  const Factor& f = *pos.factor;
  for (std::size_t l = f.offset; l < f.offset + f.size; ++l) {
    AlgElement left = p.layout.at(pos.row, l);
    AlgElement right = p.layout.at(l, pos.col);
    if (g.star) {
      left = left.adjoint();
      right = right.adjoint();
    }
    out += Tensor::product(left, right);
  }
  return out;
}

class CoproductCache {
 public:
  explicit CoproductCache(const Presentation& p) : p_(p) {}

  const Tensor& letter(const GeneratorId& g) {
    auto it = cache_.find(g);
    if (it == cache_.end()) it = cache_.emplace(g, coproduct_letter(p_, g)).first;
    return it->second;
  }

  Tensor word(const Word& w) {
    Tensor out = Tensor::elementary({Word{}, Word{}});
    for (const auto& g : w) out = out * letter(g);
    return out;
  }

  Tensor element(const AlgElement& a) {
    Tensor out(2);
    for (const auto& [w, c] : a.terms()) {
      Tensor t = word(w);
      t *= c;
      out += t;
    }
    return out;
  }

 private:
  const Presentation& p_;
  std::map<GeneratorId, Tensor> cache_;
};

Rational counit_letter(const Presentation& p, const GeneratorId& g) {
  const Position pos = locate(p, g);
  return pos.row == pos.col ? Rational(1) : Rational(0);
}

Rational counit_word(const Presentation& p, const Word& w) {
  Rational out = 1;
  for (const auto& g : w) {
    out *= counit_letter(p, g);
    if (out == 0) break;
  }
  return out;
}

AlgElement antipode_letter(const Presentation& p, const GeneratorId& g) {
  const Position pos = locate(p, g);
  if (!g.star) return p.layout.at(pos.col, pos.row).adjoint();
  // S(conj U) = Q^{-1} U^t Q on the factor block.
  const Factor& f = *pos.factor;
  const ScalarMatrix qinv = f.q.inverse();
  const std::size_t j = pos.row - f.offset;
  const std::size_t k = pos.col - f.offset;
  AlgElement out;
  for (std::size_t a = 0; a < f.size; ++a) {
    if (qinv.at(j, a) == 0) continue;
    for (std::size_t b = 0; b < f.size; ++b) {
      if (f.q.at(b, k) == 0) continue;
      out += p.layout.at(f.offset + b, f.offset + a) * (qinv.at(j, a) * f.q.at(b, k));
    }
  }
  return out;
}

AlgElement antipode_word(const Presentation& p, const Word& w) {
  AlgElement out = AlgElement::scalar(1);
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) out = out * antipode_letter(p, *it);
  return out;
}

std::string generator_item(const GeneratorId& g) { return to_string(g); }

bool is_symplectic_orthogonal(const Presentation& p) {
  if (p.factors.size() != 1 || !p.factors.front().f) return false;
  const ScalarMatrix& f = *p.factors.front().f;
  if (f.rows() % 2 != 0 || f.rows() == 0) return false;
  const BlockSpec j{BlockKind::CaseII, {Block{1, static_cast<int>(f.rows() / 2)}}, 0, 1};
  return f == standard_form_matrix(j);
}

}  // namespace

// ---------------------------------------------------------------------------
// Tensor

Tensor Tensor::elementary(const Key& legs, const Rational& c) {
  Tensor t(legs.size());
  t.add_term(legs, c);
  return t;
}

Tensor Tensor::product(const AlgElement& a, const AlgElement& b) {
  Tensor t(2);
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) t.add_term({wa, wb}, ca * cb);
  return t;
}

Rational Tensor::coefficient(const Key& legs) const {
  auto it = terms_.find(legs);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Tensor::add_term(const Key& legs, const Rational& c) {
  if (legs.size() != arity_) fail(ErrorKind::Shape, "Tensor: term arity differs from tensor arity");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(legs, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Tensor& Tensor::operator+=(const Tensor& other) {
  if (other.arity_ != arity_) fail(ErrorKind::Shape, "Tensor: arity mismatch");
  for (const auto& [k, c] : other.terms_) add_term(k, c);
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& other) {
  if (other.arity_ != arity_) fail(ErrorKind::Shape, "Tensor: arity mismatch");
  for (const auto& [k, c] : other.terms_) add_term(k, -c);
  return *this;
}

Tensor& Tensor::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

Tensor operator*(const Tensor& a, const Tensor& b) {
  if (a.arity_ != b.arity_) fail(ErrorKind::Shape, "Tensor: arity mismatch");
  Tensor out(a.arity_);
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      Tensor::Key key(a.arity_);
      for (std::size_t i = 0; i < a.arity_; ++i) key[i] = ka[i] * kb[i];
      out.add_term(key, ca * cb);
    }
  }
  return out;
}

std::string to_string(const Tensor& t) {
  if (t.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [legs, c] : t.terms()) {
    out += first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    first = false;
    if (abs(c) != 1) out += to_string(Rational(abs(c))) + " ";
    for (std::size_t i = 0; i < legs.size(); ++i) out += (i ? " (x) " : "") + to_string(legs[i]);
  }
  return out;
}

Tensor flip(const Tensor& t) {
  if (t.arity() != 2) fail(ErrorKind::Shape, "flip: tensor is not a 2-tensor");
  Tensor out(2);
  for (const auto& [legs, c] : t.terms()) out.add_term({legs[1], legs[0]}, c);
  return out;
}

// ---------------------------------------------------------------------------
// Structure maps

Tensor coproduct(const Presentation& p, const AlgElement& a) {
  CoproductCache cache(p);
  return cache.element(a);
}

Tensor coproduct_on_leg(const Presentation& p, const Tensor& t, std::size_t leg) {
  if (leg >= t.arity()) fail(ErrorKind::InvalidArgument, "coproduct_on_leg: leg out of range");
  CoproductCache cache(p);
  Tensor out(t.arity() + 1);
  for (const auto& [legs, c] : t.terms()) {
    const Tensor d = cache.word(legs[leg]);
    for (const auto& [dl, dc] : d.terms()) {
      Tensor::Key key;
      for (std::size_t i = 0; i < legs.size(); ++i) {
        if (i == leg) {
          key.push_back(dl[0]);
          key.push_back(dl[1]);
        } else {
          key.push_back(legs[i]);
        }
      }
      out.add_term(key, c * dc);
    }
  }
  return out;
}

Rational counit(const Presentation& p, const AlgElement& a) {
  Rational out = 0;
  for (const auto& [w, c] : a.terms()) out += c * counit_word(p, w);
  return out;
}

Tensor counit_on_leg(const Presentation& p, const Tensor& t, std::size_t leg) {
  if (leg >= t.arity() || t.arity() < 2) fail(ErrorKind::InvalidArgument, "counit_on_leg: leg out of range");
  Tensor out(t.arity() - 1);
  for (const auto& [legs, c] : t.terms()) {
    const Rational e = counit_word(p, legs[leg]);
    if (e == 0) continue;
    Tensor::Key key;
    for (std::size_t i = 0; i < legs.size(); ++i)
      if (i != leg) key.push_back(legs[i]);
    out.add_term(key, c * e);
  }
  return out;
}

AlgElement antipode(const Presentation& p, const AlgElement& a) {
  AlgElement out;
  for (const auto& [w, c] : a.terms()) out += antipode_word(p, w) * c;
  return out;
}

AlgElement multiply_with_antipode(const Presentation& p, const Tensor& t, std::size_t leg) {
  if (t.arity() != 2 || leg > 1) fail(ErrorKind::InvalidArgument, "multiply_with_antipode: needs a 2-tensor");
  AlgElement out;
  for (const auto& [legs, c] : t.terms()) {
    AlgElement left = AlgElement::monomial(legs[0]);
    AlgElement right = AlgElement::monomial(legs[1]);
    if (leg == 0) {
      left = antipode_word(p, legs[0]);
    } else {
      right = antipode_word(p, legs[1]);
    }
    out += left * right * c;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Axioms

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::size_t HopfReport::count(CheckStatus s) const {
  std::size_t n = 0;
  for (const auto& r : results)
    if (r.status == s) ++n;
  return n;
}

namespace {

RelationIndex index_of(const Presentation& p) {
  std::vector<AlgElement> rels;
  for (const auto& rel : p.relations) rels.push_back(rel.expr);
  return RelationIndex(rels);
}

CheckStatus preserves_in(const Presentation& p, const RelationIndex& index, const AlgElement& r, int bound,
                         std::size_t budget) {
  const Tensor d = coproduct(p, r);
  if (d.is_zero()) return CheckStatus::Pass;
  const auto room = static_cast<std::size_t>(bound);
  using Mono = std::pair<Word, Word>;
  // With `bare` set only r (x) w and w (x) r are used; that smaller span
  // already contains the coproduct of the defining relations and is much
  // cheaper to close.
  bool bare = true;
  const std::function<void(const Mono&, const std::function<void(SparseVector<Mono>)>&)> expand =
      [&](const Mono& m, const std::function<void(SparseVector<Mono>)>& emit) {
        if (m.first.size() + m.second.size() > room) return;
        index.for_each_occurrence(m.first, room - m.second.size(),
                                  [&](const Word& left, const AlgElement& rel, const Word& right) {
                                    if (bare && !(left.empty() && right.empty())) return;
                                    SparseVector<Mono> e;
                                    for (const auto& [w, c] : rel.terms()) e[{left * w * right, m.second}] = c;
                                    emit(std::move(e));
                                  });
        index.for_each_occurrence(m.second, room - m.first.size(),
                                  [&](const Word& left, const AlgElement& rel, const Word& right) {
                                    if (bare && !(left.empty() && right.empty())) return;
                                    SparseVector<Mono> e;
                                    for (const auto& [w, c] : rel.terms()) e[{m.first, left * w * right}] = c;
                                    emit(std::move(e));
                                  });
      };
  SparseVector<Mono> x;
  for (const auto& [legs, c] : d.terms()) {
    if (legs[0].size() + legs[1].size() > room) return CheckStatus::Inconclusive;
    x[{legs[0], legs[1]}] = c;
  }
  if (span_membership<Mono>(x, expand, budget) == Membership::Member) return CheckStatus::Pass;
  bare = false;
  return span_membership<Mono>(x, expand, budget) == Membership::Member ? CheckStatus::Pass
                                                                        : CheckStatus::Inconclusive;
}

}  // namespace

CheckStatus coproduct_preserves(const Presentation& p, const AlgElement& r, int bound, std::size_t budget) {
  return preserves_in(p, index_of(p), r, bound, budget);
}

HopfReport hopf_axiom_check(const Presentation& p, const HopfOptions& opts) {
  HopfReport report;
  report.bound = opts.bound;
  std::vector<AlgElement> rels;
  for (const auto& rel : p.relations) rels.push_back(rel.expr);
  MembershipOptions mopts;
  mopts.bound = opts.bound;
  mopts.budget = opts.budget;
  auto modulo_relations = [&](const AlgElement& x) {
    if (x.is_zero()) return CheckStatus::Pass;
    if (static_cast<int>(x.degree()) > opts.bound) return CheckStatus::Inconclusive;
    return ideal_membership(x, rels, mopts) == Membership::Member ? CheckStatus::Pass : CheckStatus::Inconclusive;
  };

  for (const auto& g : p.generators) {
    for (const GeneratorId& letter : {g, g.adjoint()}) {
      const AlgElement x = AlgElement::letter(letter);
      const Tensor d = coproduct(p, x);
      const std::string item = generator_item(letter);
      const bool coassoc = coproduct_on_leg(p, d, 0) == coproduct_on_leg(p, d, 1);
      report.results.push_back({"coassociativity", item, coassoc ? CheckStatus::Pass : CheckStatus::Fail});
      const Tensor left_counit = counit_on_leg(p, d, 0);
      const Tensor right_counit = counit_on_leg(p, d, 1);
      Tensor as_one_leg(1);
      for (const auto& [w, c] : x.terms()) as_one_leg.add_term({w}, c);
      const bool counit_ok = left_counit == as_one_leg && right_counit == as_one_leg;
      report.results.push_back({"counit", item, counit_ok ? CheckStatus::Pass : CheckStatus::Fail});
      const AlgElement unit = AlgElement::scalar(counit(p, x));
      report.results.push_back({"antipode-left", item, modulo_relations(multiply_with_antipode(p, d, 0) - unit)});
      report.results.push_back({"antipode-right", item, modulo_relations(multiply_with_antipode(p, d, 1) - unit)});
    }
  }
  if (opts.relations) {
    const RelationIndex index = index_of(p);
    for (const auto& rel : p.relations) {
      report.results.push_back(
          {"coproduct-preserves-relation", rel.label, preserves_in(p, index, rel.expr, opts.bound, opts.budget)});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Central morphism

Z2Morphism central_morphism(const Presentation& p) {
  if (!is_symplectic_orthogonal(p)) {
    fail(ErrorKind::Shape, "central_morphism: presentation is not Pol(O_{J_M}^+)");
  }
  Z2Morphism gamma;
  for (const auto& g : p.generators) {
    const Position pos = locate(p, g);
    gamma[g] = pos.row == pos.col ? Z2Element{0, 1} : Z2Element{0, 0};
  }
  return gamma;
}

namespace {

Z2Element z2_mul(const Z2Element& x, const Z2Element& y) {
  return {x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a};
}

Z2Element z2_word(const Z2Morphism& gamma, const Word& w) {
  Z2Element out{1, 0};
  for (const auto& g : w) {
    auto it = gamma.find(g.plain());
    if (it == gamma.end()) fail(ErrorKind::InvalidArgument, "morphism: no image for " + to_string(g));
    out = z2_mul(out, it->second);
    if (out.a == 0 && out.b == 0) break;
  }
  return out;
}

void z2_add(Z2Tensor& out, int power, const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = out.try_emplace({power, w}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) out.erase(it);
  }
}

}  // namespace

Z2Element apply_morphism(const Z2Morphism& gamma, const AlgElement& a) {
  Z2Element out{0, 0};
  for (const auto& [w, c] : a.terms()) {
    const Z2Element v = z2_word(gamma, w);
    out.a += c * v.a;
    out.b += c * v.b;
  }
  return out;
}

Z2Tensor apply_morphism_left(const Z2Morphism& gamma, const Tensor& t) {
  if (t.arity() != 2) fail(ErrorKind::Shape, "apply_morphism_left: needs a 2-tensor");
  Z2Tensor out;
  for (const auto& [legs, c] : t.terms()) {
    const Z2Element v = z2_word(gamma, legs[0]);
    z2_add(out, 0, legs[1], c * v.a);
    z2_add(out, 1, legs[1], c * v.b);
  }
  return out;
}

bool central_morphism_check(const Presentation& p) { return central_morphism_check(p, central_morphism(p)); }

bool central_morphism_check(const Presentation& p, const Z2Morphism& gamma) {
  if (!is_symplectic_orthogonal(p)) {
    fail(ErrorKind::Shape, "central_morphism_check: presentation is not Pol(O_{J_M}^+)");
  }
  for (const auto& g : p.generators) {
    for (const GeneratorId& letter : {g, g.adjoint()}) {
      const Tensor d = coproduct(p, AlgElement::letter(letter));
      if (apply_morphism_left(gamma, d) != apply_morphism_left(gamma, flip(d))) return false;
    }
  }
  return true;
}

bool hopf_kernel_membership(const Presentation& p, const AlgElement& b) {
  const Z2Morphism gamma = central_morphism(p);
  const Z2Tensor lhs = apply_morphism_left(gamma, coproduct(p, b));
  Z2Tensor rhs;
  for (const auto& [w, c] : b.terms()) z2_add(rhs, 0, w, c);
  return lhs == rhs;
}

}  // namespace cqg
