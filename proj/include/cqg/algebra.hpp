// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

// Free *-algebra over the rationals: letters, words, elements and matrices
// with entries in the algebra.

#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cqg/rational.hpp"

namespace cqg {

/// Interned generator family name. Copies are pointer-sized; ordering is by
/// the string value.
class Name {
 public:
  Name();  // "u"
  explicit Name(std::string_view text);

  const std::string& str() const noexcept { return *text_; }

  friend bool operator==(Name a, Name b) noexcept { return a.text_ == b.text_; }
  friend std::strong_ordering operator<=>(Name a, Name b) noexcept {
    if (a.text_ == b.text_) return std::strong_ordering::equal;
    return a.text_->compare(*b.text_) < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }

 private:
  const std::string* text_;
};

/// One letter of the free *-algebra: u_{jk} or u*_{jk} of a given free
/// product factor. Indices are 1-based.
struct GeneratorId {
  int factor = 0;
  Name name;
  int row = 0;
  int col = 0;
  bool star = false;

  GeneratorId adjoint() const {
    GeneratorId g = *this;
    g.star = !g.star;
    return g;
  }
  GeneratorId plain() const {
    GeneratorId g = *this;
    g.star = false;
    return g;
  }

  friend bool operator==(const GeneratorId&, const GeneratorId&) = default;
  friend std::strong_ordering operator<=>(const GeneratorId&, const GeneratorId&) = default;
};

GeneratorId make_generator(int row, int col, int factor = 0, std::string_view name = "u");

/// "u[1,2]", "u[1,2]*", with a "{f}" factor marker when the factor tag is
/// nonzero, e.g. "u{1}[1,2]".
std::string to_string(const GeneratorId& g);

/// Finite sequence of letters; the empty word is the unit. Ordered by length,
/// then letterwise.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<GeneratorId> letters) : letters_(letters) {}
  explicit Word(std::vector<GeneratorId> letters) : letters_(std::move(letters)) {}

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  const GeneratorId& operator[](std::size_t i) const { return letters_[i]; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }
  const std::vector<GeneratorId>& letters() const noexcept { return letters_; }

  Word subword(std::size_t pos, std::size_t len) const;
  /// Reversal with every star flag toggled.
  Word adjoint() const;
  /// Rotation starting at position `shift`.
  Word rotated(std::size_t shift) const;

  friend Word operator*(const Word& a, const Word& b);

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::vector<GeneratorId> letters_;
};

std::string to_string(const Word& w);

class AlgElement;
/// Images of plain letters. Adjoint letters map to the adjoint image.
using Substitution = std::map<GeneratorId, AlgElement>;

/// Finite rational combination of words. Zero coefficients are never stored.
class AlgElement {
 public:
  using Terms = std::map<Word, Rational>;

  AlgElement() = default;
  static AlgElement scalar(const Rational& c);
  static AlgElement letter(const GeneratorId& g);
  static AlgElement monomial(const Word& w, const Rational& c = 1);

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  Rational coefficient(const Word& w) const;
  void add_term(const Word& w, const Rational& c);

  /// Maximal word length; 0 for scalars and for zero.
  std::size_t degree() const;
  /// Plain versions of every letter that occurs.
  std::set<GeneratorId> generators() const;
  /// Smallest word with nonzero coefficient. Precondition: nonzero.
  const Word& leading_word() const { return terms_.begin()->first; }

  AlgElement adjoint() const;
  AlgElement substitute(const Substitution& sigma) const;

  AlgElement& operator+=(const AlgElement& other);
  AlgElement& operator-=(const AlgElement& other);
  AlgElement& operator*=(const Rational& c);

  friend AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }
  friend AlgElement operator-(AlgElement a, const AlgElement& b) { return a -= b; }
  friend AlgElement operator-(AlgElement a) { return a *= Rational(-1); }
  friend AlgElement operator*(const AlgElement& a, const AlgElement& b);
  friend AlgElement operator*(AlgElement a, const Rational& c) { return a *= c; }
  friend AlgElement operator*(const Rational& c, AlgElement a) { return a *= c; }

  friend bool operator==(const AlgElement&, const AlgElement&) = default;

 private:
  Terms terms_;
};

/// Total order on elements: term lists compared in ascending word order.
std::strong_ordering compare(const AlgElement& a, const AlgElement& b);

std::string to_string(const AlgElement& a);

/// Rectangular matrix of exact rationals.
class ScalarMatrix {
 public:
  ScalarMatrix() = default;
  ScalarMatrix(std::size_t rows, std::size_t cols);
  ScalarMatrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static ScalarMatrix identity(std::size_t n);
  static ScalarMatrix diagonal(const std::vector<Rational>& entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  ScalarMatrix transpose() const;
  /// Entrywise complex conjugate; the identity on rational matrices.
  ScalarMatrix conj() const { return *this; }
  /// Conjugate transpose.
  ScalarMatrix adjoint() const { return transpose(); }
  /// Exact Gauss-Jordan inverse; throws on a singular or non-square matrix.
  ScalarMatrix inverse() const;

  bool is_square() const noexcept { return rows_ == cols_; }
  bool is_diagonal() const;
  /// Exactly one nonzero entry in every row and every column.
  bool is_monomial() const;
  bool is_scalar_multiple_of_identity(Rational* factor = nullptr) const;

  friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
  friend ScalarMatrix operator*(const Rational& c, const ScalarMatrix& a);
  friend bool operator==(const ScalarMatrix&, const ScalarMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

std::string to_string(const ScalarMatrix& m);

/// Rectangular matrix with entries in the free *-algebra.
class AlgMatrix {
 public:
  AlgMatrix() = default;
  AlgMatrix(std::size_t rows, std::size_t cols);

  static AlgMatrix identity(std::size_t n);
  /// Matrix of letters name[j,k] of the given factor, 1-based indices.
  static AlgMatrix generic(std::size_t rows, std::size_t cols, int factor = 0, std::string_view name = "u");

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  AlgElement& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const AlgElement& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  /// Conjugate transpose: (M*)_{jk} = (M_{kj})*.
  AlgMatrix star() const;
  AlgMatrix transpose() const;
  /// Entrywise adjoint without transposition.
  AlgMatrix bar() const;
  AlgMatrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  AlgMatrix substitute(const Substitution& sigma) const;

  friend AlgMatrix operator*(const AlgMatrix& a, const AlgMatrix& b);
  friend AlgMatrix operator+(const AlgMatrix& a, const AlgMatrix& b);
  friend AlgMatrix operator-(const AlgMatrix& a, const AlgMatrix& b);
  friend AlgMatrix operator*(const Rational& c, const AlgMatrix& a);
  friend bool operator==(const AlgMatrix&, const AlgMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<AlgElement> data_;
};

AlgMatrix scalar_embed(const ScalarMatrix& s);

}  // namespace cqg
