// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

#include "cqg/algebra.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "cqg/error.hpp"

namespace cqg {

namespace {

const std::string* intern(std::string_view text) {
  static std::mutex mutex;
  static std::unordered_map<std::string, std::unique_ptr<std::string>> pool;
  std::lock_guard lock(mutex);
  auto it = pool.find(std::string(text));
  if (it == pool.end()) {
    auto owned = std::make_unique<std::string>(text);
    it = pool.emplace(std::string(text), std::move(owned)).first;
  }
  return it->second.get();
}

}  // namespace

Name::Name() : text_(intern("u")) {}
Name::Name(std::string_view text) : text_(intern(text)) {}

GeneratorId make_generator(int row, int col, int factor, std::string_view name) {
  GeneratorId g;
  g.factor = factor;
  g.name = Name(name);
  g.row = row;
  g.col = col;
  return g;
}

std::string to_string(const GeneratorId& g) {
  std::string out = g.name.str();
  if (g.factor != 0) out += "{" + std::to_string(g.factor) + "}";
  if (g.row != 0 || g.col != 0) out += "[" + std::to_string(g.row) + "," + std::to_string(g.col) + "]";
  if (g.star) out += "*";
  return out;
}

// ---------------------------------------------------------------------------
// Word

Word Word::subword(std::size_t pos, std::size_t len) const {
  return Word(std::vector<GeneratorId>(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                                       letters_.begin() + static_cast<std::ptrdiff_t>(pos + len)));
}

Word Word::adjoint() const {
  std::vector<GeneratorId> out;
  out.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.push_back(it->adjoint());
  return Word(std::move(out));
}

Word Word::rotated(std::size_t shift) const {
  if (letters_.empty()) return *this;
  shift %= letters_.size();
  std::vector<GeneratorId> out(letters_.begin() + static_cast<std::ptrdiff_t>(shift), letters_.end());
  out.insert(out.end(), letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(shift));
  return Word(std::move(out));
}

Word operator*(const Word& a, const Word& b) {
  std::vector<GeneratorId> out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.letters_.begin(), a.letters_.end());
  out.insert(out.end(), b.letters_.begin(), b.letters_.end());
  return Word(std::move(out));
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (auto c = a[i] <=> b[i]; c != 0) return c;
  }
  return std::strong_ordering::equal;
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += " ";
    out += to_string(w[i]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// AlgElement

AlgElement AlgElement::scalar(const Rational& c) { return monomial(Word{}, c); }

AlgElement AlgElement::letter(const GeneratorId& g) { return monomial(Word{g}, 1); }

AlgElement AlgElement::monomial(const Word& w, const Rational& c) {
  AlgElement a;
  a.add_term(w, c);
  return a;
}

Rational AlgElement::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

void AlgElement::add_term(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

std::size_t AlgElement::degree() const {
  // Word order is by length first, so the last term has maximal length.
  return terms_.empty() ? 0 : terms_.rbegin()->first.size();
}

std::set<GeneratorId> AlgElement::generators() const {
  std::set<GeneratorId> out;
  for (const auto& [w, c] : terms_) {
    for (const auto& g : w) out.insert(g.plain());
  }
  return out;
}

AlgElement AlgElement::adjoint() const {
  AlgElement out;
  for (const auto& [w, c] : terms_) out.terms_.emplace(w.adjoint(), c);
  return out;
}

AlgElement AlgElement::substitute(const Substitution& sigma) const {
  if (sigma.empty()) return *this;
  AlgElement out;
  for (const auto& [w, c] : terms_) {
    AlgElement product = scalar(c);
    for (const auto& letter : w) {
      auto it = sigma.find(letter.plain());
      if (it == sigma.end()) {
        product = product * AlgElement::letter(letter);
      } else {
        product = product * (letter.star ? it->second.adjoint() : it->second);
      }
      if (product.is_zero()) break;
    }
    out += product;
  }
  return out;
}

AlgElement& AlgElement::operator+=(const AlgElement& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& other) {
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

AlgElement& AlgElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [w, coeff] : terms_) coeff *= c;
  }
  return *this;
}

AlgElement operator*(const AlgElement& a, const AlgElement& b) {
  AlgElement out;
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      out.add_term(wa * wb, Rational(ca * cb));
    }
  }
  return out;
}

std::strong_ordering compare(const AlgElement& a, const AlgElement& b) {
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (auto c = ia->first <=> ib->first; c != 0) return c;
    const int cmpv = cmp(ia->second, ib->second);
    if (cmpv != 0) return cmpv < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.size() <=> b.size();
}

std::string to_string(const AlgElement& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : a.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (w.empty()) {
      out += to_string(mag);
    } else {
      if (mag != 1) out += to_string(mag) + " ";
      out += to_string(w);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// ScalarMatrix

ScalarMatrix::ScalarMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

ScalarMatrix::ScalarMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  for (const auto& row : rows) {
    if (row.size() != cols_) fail(ErrorKind::Shape, "ragged scalar matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ScalarMatrix ScalarMatrix::identity(std::size_t n) {
  ScalarMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

ScalarMatrix ScalarMatrix::diagonal(const std::vector<Rational>& entries) {
  ScalarMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m.at(i, i) = entries[i];
  return m;
}

ScalarMatrix ScalarMatrix::transpose() const {
  ScalarMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

ScalarMatrix ScalarMatrix::inverse() const {
  if (!is_square()) fail(ErrorKind::Shape, "inverse of a non-square matrix");
  const std::size_t n = rows_;
  ScalarMatrix a = *this;
  ScalarMatrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a.at(pivot, col) == 0) ++pivot;
    if (pivot == n) fail(ErrorKind::InvalidArgument, "matrix is singular");
    if (pivot != col) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a.at(pivot, k), a.at(col, k));
        std::swap(inv.at(pivot, k), inv.at(col, k));
      }
    }
    const Rational p = a.at(col, col);
    for (std::size_t k = 0; k < n; ++k) {
      a.at(col, k) /= p;
      inv.at(col, k) /= p;
    }
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a.at(row, col) == 0) continue;
      const Rational f = a.at(row, col);
      for (std::size_t k = 0; k < n; ++k) {
        a.at(row, k) -= f * a.at(col, k);
        inv.at(row, k) -= f * inv.at(col, k);
      }
    }
  }
  return inv;
}

bool ScalarMatrix::is_diagonal() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i != j && at(i, j) != 0) return false;
  return true;
}

bool ScalarMatrix::is_monomial() const {
  if (!is_square()) return false;
  std::vector<int> col_count(cols_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    int row_count = 0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (at(i, j) != 0) {
        ++row_count;
        ++col_count[j];
      }
    }
    if (row_count != 1) return false;
  }
  return std::all_of(col_count.begin(), col_count.end(), [](int c) { return c == 1; });
}

bool ScalarMatrix::is_scalar_multiple_of_identity(Rational* factor) const {
  if (!is_diagonal() || rows_ == 0) return false;
  for (std::size_t i = 1; i < rows_; ++i)
    if (at(i, i) != at(0, 0)) return false;
  if (factor) *factor = at(0, 0);
  return true;
}

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorKind::Shape, "scalar matrix product: inner dimensions differ");
  ScalarMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return out;
}

ScalarMatrix operator*(const Rational& c, const ScalarMatrix& a) {
  ScalarMatrix out = a;
  for (auto& x : out.data_) x *= c;
  return out;
}

std::string to_string(const ScalarMatrix& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << to_string(m.at(i, j));
    os << "]";
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// AlgMatrix

AlgMatrix::AlgMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

AlgMatrix AlgMatrix::identity(std::size_t n) {
  AlgMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = AlgElement::scalar(1);
  return m;
}

AlgMatrix AlgMatrix::generic(std::size_t rows, std::size_t cols, int factor, std::string_view name) {
  AlgMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m.at(i, j) = AlgElement::letter(make_generator(static_cast<int>(i + 1), static_cast<int>(j + 1), factor, name));
  return m;
}

AlgMatrix AlgMatrix::star() const {
  AlgMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j).adjoint();
  return out;
}

AlgMatrix AlgMatrix::transpose() const {
  AlgMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

AlgMatrix AlgMatrix::bar() const {
  AlgMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i].adjoint();
  return out;
}

AlgMatrix AlgMatrix::submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
  AlgMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (rows[i] >= rows_ || cols[j] >= cols_) fail(ErrorKind::Shape, "submatrix index out of range");
      out.at(i, j) = at(rows[i], cols[j]);
    }
  return out;
}

AlgMatrix AlgMatrix::substitute(const Substitution& sigma) const {
  AlgMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i].substitute(sigma);
  return out;
}

AlgMatrix operator*(const AlgMatrix& a, const AlgMatrix& b) {
  if (a.cols_ != b.rows_) {
    fail(ErrorKind::Shape, "matrix product: " + std::to_string(a.rows_) + "x" + std::to_string(a.cols_) + " times " +
                               std::to_string(b.rows_) + "x" + std::to_string(b.cols_));
  }
  AlgMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const AlgElement& left = a.at(i, k);
      if (left.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const AlgElement& right = b.at(k, j);
        if (!right.is_zero()) out.at(i, j) += left * right;
      }
    }
  return out;
}

AlgMatrix operator+(const AlgMatrix& a, const AlgMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorKind::Shape, "matrix sum: shapes differ");
  AlgMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

AlgMatrix operator-(const AlgMatrix& a, const AlgMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) fail(ErrorKind::Shape, "matrix difference: shapes differ");
  AlgMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

AlgMatrix operator*(const Rational& c, const AlgMatrix& a) {
  AlgMatrix out = a;
  for (auto& x : out.data_) x *= c;
  return out;
}

AlgMatrix scalar_embed(const ScalarMatrix& s) {
  AlgMatrix out(s.rows(), s.cols());
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) out.at(i, j) = AlgElement::scalar(s.at(i, j));
  return out;
}

}  // namespace cqg
