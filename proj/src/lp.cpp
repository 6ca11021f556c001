// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

#include "cqg/lp.hpp"

#include <cstddef>
#include <optional>

#include "cqg/error.hpp"

namespace cqg {

namespace {

using Row = std::vector<Rational>;

class Tableau {
 public:
  // Columns: [0, n) structural, [n, n+m) artificial, last column rhs.
  Tableau(const LinearProgram& lp, std::vector<int>& row_sign)
      : m_(lp.a.size()), n_(lp.c.size()), rows_(m_, Row(n_ + m_ + 1, 0)), basis_(m_) {
    row_sign.assign(m_, 1);
    for (std::size_t i = 0; i < m_; ++i) {
      if (lp.a[i].size() != n_) fail(ErrorKind::Shape, "solve_lp: row length differs from objective length");
      const bool flip = lp.b[i] < 0;
      row_sign[i] = flip ? -1 : 1;
      for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = flip ? Rational(-lp.a[i][j]) : lp.a[i][j];
      rows_[i][n_ + i] = 1;
      rows_[i].back() = flip ? Rational(-lp.b[i]) : lp.b[i];
      basis_[i] = n_ + i;
    }
  }

  std::size_t rows() const { return m_; }
  std::size_t structural() const { return n_; }
  const std::vector<std::size_t>& basis() const { return basis_; }
  const Row& row(std::size_t i) const { return rows_[i]; }
  bool removed(std::size_t i) const { return removed_.size() > i && removed_[i]; }

  // Maximizes cost.x over columns [0, limit). Returns false if unbounded.
  bool optimize(const Row& cost, std::size_t limit) {
    for (;;) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < limit && !entering; ++j) {
        if (is_basic(j)) continue;
        Rational reduced = cost[j];
        for (std::size_t i = 0; i < m_; ++i) {
          if (!removed(i) && rows_[i][j] != 0) reduced -= cost[basis_[i]] * rows_[i][j];
        }
        if (reduced > 0) entering = j;
      }
      if (!entering) return true;
      const std::size_t col = *entering;
      std::optional<std::size_t> leaving;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (removed(i) || rows_[i][col] <= 0) continue;
        Rational ratio = rows_[i].back() / rows_[i][col];
        if (!leaving || ratio < best || (ratio == best && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best = ratio;
        }
      }
      if (!leaving) return false;
      pivot(*leaving, col);
    }
  }

  void pivot(std::size_t r, std::size_t col) {
    const Rational p = rows_[r][col];
    for (auto& x : rows_[r]) x /= p;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || removed(i) || rows_[i][col] == 0) continue;
      const Rational f = rows_[i][col];
      for (std::size_t j = 0; j < rows_[i].size(); ++j) {
        if (rows_[r][j] != 0) rows_[i][j] -= f * rows_[r][j];
      }
    }
    basis_[r] = col;
  }

  // After phase one: pivot artificial variables out of the basis, dropping
  // rows that are linear combinations of the others.
  void expel_artificials() {
    removed_.assign(m_, false);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      std::optional<std::size_t> col;
      for (std::size_t j = 0; j < n_ && !col; ++j)
        if (rows_[i][j] != 0) col = j;
      if (col) {
        pivot(i, *col);
      } else {
        removed_[i] = true;
      }
    }
  }

 private:
  bool is_basic(std::size_t j) const {
    for (std::size_t i = 0; i < m_; ++i)
      if (!removed(i) && basis_[i] == j) return true;
    return false;
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<Row> rows_;
  std::vector<std::size_t> basis_;
  std::vector<bool> removed_;
};

// Solves B^T y = c_B where B holds the basic columns of the sign-adjusted A.
Row solve_dual(const LinearProgram& lp, const std::vector<int>& sign, const Tableau& t) {
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < t.rows(); ++i)
    if (!t.removed(i)) active.push_back(i);
  const std::size_t k = active.size();
  // Unknowns y_active; equation per basic column j: sum_i sign_i a_ij y_i = c_j.
  std::vector<Row> sys(k, Row(k + 1, 0));
  for (std::size_t e = 0; e < k; ++e) {
    const std::size_t j = t.basis()[active[e]];
    for (std::size_t u = 0; u < k; ++u) {
      const std::size_t i = active[u];
      sys[e][u] = sign[i] < 0 ? Rational(-lp.a[i][j]) : lp.a[i][j];
    }
    sys[e][k] = lp.c[j];
  }
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t p = col;
    while (p < k && sys[p][col] == 0) ++p;
    if (p == k) fail(ErrorKind::Internal, "solve_lp: singular optimal basis");
    std::swap(sys[p], sys[col]);
    const Rational piv = sys[col][col];
    for (auto& x : sys[col]) x /= piv;
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col || sys[r][col] == 0) continue;
      const Rational f = sys[r][col];
      for (std::size_t j = col; j <= k; ++j) sys[r][j] -= f * sys[col][j];
    }
  }
  Row y(t.rows(), 0);
  for (std::size_t u = 0; u < k; ++u) {
    const std::size_t i = active[u];
    y[i] = sign[i] < 0 ? Rational(-sys[u][k]) : sys[u][k];
  }
  return y;
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp) {
  if (lp.a.size() != lp.b.size()) fail(ErrorKind::Shape, "solve_lp: row count differs from rhs length");
  std::vector<int> sign;
  Tableau t(lp, sign);
  const std::size_t n = t.structural();
  const std::size_t m = t.rows();

  // Phase one: maximize minus the sum of artificials.
  Row phase1(n + m + 1, 0);
  for (std::size_t i = 0; i < m; ++i) phase1[n + i] = -1;
  t.optimize(phase1, n + m);
  Rational infeasibility = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (t.basis()[i] >= n) infeasibility += t.row(i).back();
  LpResult result;
  if (infeasibility != 0) {
    result.status = LpStatus::Infeasible;
    return result;
  }
  t.expel_artificials();

  Row phase2(n + m + 1, 0);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = lp.c[j];
  if (!t.optimize(phase2, n)) {
    result.status = LpStatus::Unbounded;
    return result;
  }
  result.status = LpStatus::Optimal;
  result.x.assign(n, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (!t.removed(i) && t.basis()[i] < n) result.x[t.basis()[i]] = t.row(i).back();
  }
  result.value = 0;
  for (std::size_t j = 0; j < n; ++j) result.value += lp.c[j] * result.x[j];
  result.y = solve_dual(lp, sign, t);
  return result;
}

}  // namespace cqg
