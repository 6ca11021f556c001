// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

// Formal calculus of tracial states on a presented *-algebra.
//
// A trace value tau(w) is a complex unknown attached to the cyclic class of
// w. Writing tau(w) = x + i y for the canonical representative, the adjoint
// class satisfies tau(w*) = x - i y; classes closed under the adjoint are
// real. Applying tau to every relation gives linear equations over these
// unknowns; the unknowns tau(g g*) for single generators g are additionally
// nonnegative. A generator g lies in the Kac ideal when tau(g* g) = 0 is a
// consequence, which is certified by a nonnegative combination of equations.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cqg/algebra.hpp"
#include "cqg/presentation.hpp"

namespace cqg {

/// Canonical representative of the cyclic class of a word or of its adjoint.
struct CanonicalTrace {
  Word symbol;         // least rotation; the empty word stands for tau(1)
  int imag_sign = 1;   // -1 when the adjoint class was the smaller one
  bool real = false;   // the class is closed under the adjoint
};

CanonicalTrace cyclic_canonical(const Word& w);

/// constant + sum re[s] Re tau(s) + sum im[s] Im tau(s).
struct TraceExpr {
  Rational constant;
  std::map<Word, Rational> re;
  std::map<Word, Rational> im;

  bool is_zero() const { return constant == 0 && re.empty() && im.empty(); }
  TraceExpr& add(const TraceExpr& other, const Rational& factor = 1);
  friend bool operator==(const TraceExpr&, const TraceExpr&) = default;
};

std::string to_string(const TraceExpr& e);

/// Formal tau(a) for a tracial functional tau.
TraceExpr trace_of(const AlgElement& a);

struct TraceEquation {
  TraceExpr expr;  // asserted to be zero
  std::string provenance;
};

struct TraceEquationSet {
  std::vector<TraceEquation> equations;
  /// Sorted symbols canonical(g g*) for the generators g of the presentation.
  std::vector<Word> nonnegative;
  std::map<Word, GeneratorId> generator_of_symbol;

  bool is_nonnegative(const Word& symbol) const;
  /// Nonnegative symbols that never occur with positive coefficient in an
  /// equation of the form "1 - (nonnegative terms)".
  std::vector<Word> unbounded_symbols() const;
};

/// tau(w r) = 0 for every relation r and every word w of length <= degree,
/// split into real and imaginary equations.
TraceEquationSet derive_trace_equations(const Presentation& p, int degree = 0);

/// Nonnegative symbol for tau(g* g).
Word nonnegative_symbol(const GeneratorId& g);

struct Certificate {
  Word target;
  /// (equation index, multiplier)
  std::vector<std::pair<std::size_t, Rational>> terms;
  TraceExpr combination;
};

/// Recombines the cited equations and re-checks every sign condition.
bool verify_certificate(const TraceEquationSet& equations, const Certificate& cert, std::string* why = nullptr);

/// Gaussian elimination of the free unknowns, shared by all targets of one
/// equation set, followed by an exact LP per target.
class ForcedZeroSolver {
 public:
  explicit ForcedZeroSolver(const TraceEquationSet& equations);

  /// A certificate iff max tau(target) subject to the equations is exactly
  /// zero. Throws Error(Undetermined) if that LP is unbounded.
  std::optional<Certificate> forced_zero(const Word& target) const;

  /// The span of the equations, in terms of the original equation indices,
  /// if `expr` lies in it.
  std::optional<std::map<std::size_t, Rational>> span_combination(const TraceExpr& expr) const;

 private:
  struct Row {
    std::map<int, Rational> coeffs;  // column -> coefficient
    Rational constant;
    std::map<std::size_t, Rational> combination;  // equation index -> multiplier
  };

  void reduce(Row& row, bool free_only) const;

  const TraceEquationSet& equations_;
  std::map<Word, int> real_column_;
  std::map<Word, int> imag_column_;
  int free_columns_ = 0;
  std::vector<int> pivot_order_;
  std::map<int, Row> pivots_;
  std::vector<Row> reduced_;  // rows with only nonnegative unknowns
};

std::optional<Certificate> forced_zero(const TraceEquationSet& equations, const Word& target);

struct ForcedGenerator {
  GeneratorId generator;
  int round = 0;
  Certificate certificate;
  /// The cited equations, so that the certificate can be re-checked without
  /// re-deriving the round's equation set.
  std::vector<TraceEquation> cited;
};

/// Re-checks a forced generator's certificate from its cited equations
/// alone; a symbol counts as nonnegative when it has the shape g* g.
bool reverify(const ForcedGenerator& fg, std::string* why = nullptr);

struct KacReport {
  std::vector<GeneratorId> forced;
  std::vector<ForcedGenerator> certificates;
  int rounds = 0;
  std::vector<GeneratorId> undetermined;
};

/// Derive, collect forced generators, quotient them out, repeat until no new
/// generator is forced. Orthogonal factors are reduced first; a non-monomial
/// F is refused.
std::pair<KacReport, Presentation> kac_fixpoint(const Presentation& p, int degree = 0);

}  // namespace cqg
