// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

// Coproduct, counit and antipode on presented CQG algebras, bounded checks
// of the Hopf axioms, and the central morphism onto CZ_2.

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cqg/algebra.hpp"
#include "cqg/presentation.hpp"

namespace cqg {

/// Finite combination of elementary tensors w_1 (x) ... (x) w_k.
class Tensor {
 public:
  using Key = std::vector<Word>;
  using Terms = std::map<Key, Rational>;

  explicit Tensor(std::size_t arity = 2) : arity_(arity) {}
  static Tensor elementary(const Key& legs, const Rational& c = 1);
  /// a (x) b for elements.
  static Tensor product(const AlgElement& a, const AlgElement& b);

  std::size_t arity() const noexcept { return arity_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Rational coefficient(const Key& legs) const;

  void add_term(const Key& legs, const Rational& c);
  Tensor& operator+=(const Tensor& other);
  Tensor& operator-=(const Tensor& other);
  Tensor& operator*=(const Rational& c);

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  /// Legwise product (a1 (x) a2)(b1 (x) b2) = a1 b1 (x) a2 b2.
  friend Tensor operator*(const Tensor& a, const Tensor& b);
  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  std::size_t arity_;
  Terms terms_;
};

std::string to_string(const Tensor& t);

/// Swap of the two legs of a 2-tensor.
Tensor flip(const Tensor& t);

/// Unital *-homomorphism with Delta(u_jk) = sum_l u_jl (x) u_lk, read off the
/// fundamental layout. Throws on letters outside the layout.
Tensor coproduct(const Presentation& p, const AlgElement& a);
/// Applies the coproduct to leg `leg` of t, raising the arity by one.
Tensor coproduct_on_leg(const Presentation& p, const Tensor& t, std::size_t leg);

/// Character with counit(u_jk) = delta_jk.
Rational counit(const Presentation& p, const AlgElement& a);
/// Applies the counit to leg `leg` of t, lowering the arity by one.
Tensor counit_on_leg(const Presentation& p, const Tensor& t, std::size_t leg);

/// Anti-multiplicative with S(u_jk) = u*_kj and S(u*) = Q^{-1} U^t Q entrywise,
/// Q the twist of the generator's factor.
AlgElement antipode(const Presentation& p, const AlgElement& a);

/// Multiplication of a 2-tensor, with the antipode applied to leg `leg` first.
AlgElement multiply_with_antipode(const Presentation& p, const Tensor& t, std::size_t leg);

enum class CheckStatus { Pass, Fail, Inconclusive };

std::string to_string(CheckStatus s);

struct AxiomResult {
  std::string axiom;
  std::string item;
  CheckStatus status = CheckStatus::Pass;
};

struct HopfReport {
  int bound = 4;
  std::vector<AxiomResult> results;

  std::size_t count(CheckStatus s) const;
  bool all_pass() const { return count(CheckStatus::Pass) == results.size(); }
};

struct HopfOptions {
  int bound = 4;
  /// Spanning elements examined per membership question.
  std::size_t budget = 200000;
  /// Skip the relation-preservation checks (the expensive part).
  bool relations = true;
};

/// Coassociativity and counit laws exactly on every generator and adjoint;
/// antipode laws and coproduct-preservation of every relation modulo the
/// relations at the degree bound. Bounded questions are Pass or Inconclusive.
HopfReport hopf_axiom_check(const Presentation& p, const HopfOptions& opts = {});

/// Is Delta(r) in the span of (a s b) (x) w and w (x) (a s b), s a relation,
/// with total degree at most `bound`?
CheckStatus coproduct_preserves(const Presentation& p, const AlgElement& r, int bound, std::size_t budget = 200000);

/// a + b t in the group algebra of Z_2.
struct Z2Element {
  Rational a;
  Rational b;
  friend bool operator==(const Z2Element&, const Z2Element&) = default;
};

/// Images of the plain generators in CZ_2; adjoint letters map to the same
/// image since t = t*.
using Z2Morphism = std::map<GeneratorId, Z2Element>;

/// gamma(u_jk) = delta_jk t on a presentation of O_{J_M}^+.
Z2Morphism central_morphism(const Presentation& p);

Z2Element apply_morphism(const Z2Morphism& gamma, const AlgElement& a);

/// (gamma (x) id) of a 2-tensor, as a map (power of t, word) -> coefficient.
using Z2Tensor = std::map<std::pair<int, Word>, Rational>;
Z2Tensor apply_morphism_left(const Z2Morphism& gamma, const Tensor& t);

/// (gamma (x) id) Delta = (gamma (x) id) Sigma Delta on every generator.
/// Requires p = build_universal_orthogonal(J_M).
bool central_morphism_check(const Presentation& p);
bool central_morphism_check(const Presentation& p, const Z2Morphism& gamma);

/// (gamma (x) id) Delta(b) = 1 (x) b.
bool hopf_kernel_membership(const Presentation& p, const AlgElement& b);

}  // namespace cqg
