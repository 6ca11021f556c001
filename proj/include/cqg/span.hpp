// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

// Exact span membership over a lazily generated spanning set.
//
// The spanning elements that can contribute to writing x are those connected
// to the monomials of x through shared monomials; the closure below explores
// exactly that component and then decides membership by sparse echelon
// elimination over the rationals.

#pragma once

#include <cstddef>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "cqg/rational.hpp"

namespace cqg {

enum class Membership { Member, NotFound, Inconclusive };

template <class Mono>
using SparseVector = std::map<Mono, Rational>;

/// Incremental row echelon form over integer column ids.
class SparseEchelon {
 public:
  using Row = std::map<int, Rational>;

  /// Reduces `row` against the stored pivots and stores it if it is
  /// independent; null otherwise. The stored row is reduced against every earlier pivot, so a row that is
  /// already reduced stays reduced after subtracting it.
  const Row* insert(Row row) {
    reduce(row);
    if (row.empty()) return nullptr;
    const Rational inv = 1 / row.begin()->second;
    for (auto& [c, v] : row) v *= inv;
    const int lead = row.begin()->first;
    return &pivots_.emplace(lead, std::move(row)).first->second;
  }

  /// Eliminates the leading column of `pivot` from `row`.
  static void eliminate(Row& row, const Row& pivot) {
    auto it = row.find(pivot.begin()->first);
    if (it == row.end()) return;
    const Rational factor = it->second;
    for (const auto& [c, v] : pivot) {
      auto [slot, inserted] = row.try_emplace(c, -factor * v);
      if (!inserted) {
        slot->second -= factor * v;
        if (slot->second == 0) row.erase(slot);
      }
    }
  }

  void reduce(Row& row) const {
    auto it = row.begin();
    while (it != row.end()) {
      auto pit = pivots_.find(it->first);
      if (pit == pivots_.end()) {
        ++it;
        continue;
      }
      const int col = it->first;
      const Rational factor = it->second;
      for (const auto& [c, v] : pit->second) {
        auto [slot, inserted] = row.try_emplace(c, -factor * v);
        if (!inserted) {
          slot->second -= factor * v;
          if (slot->second == 0) row.erase(slot);
        }
      }
      it = row.upper_bound(col);
    }
  }

  std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<int, Row> pivots_;
};

/// `expand(m, emit)` must call `emit(element)` for every spanning element
/// whose support contains the monomial m. Elements are deduplicated by value.
template <class Mono>
Membership span_membership(
    const SparseVector<Mono>& x,
    const std::function<void(const Mono&, const std::function<void(SparseVector<Mono>)>&)>& expand,
    std::size_t budget) {
  if (x.empty()) return Membership::Member;
  std::map<Mono, int> ids;
  std::deque<Mono> queue;
  auto id_of = [&](const Mono& m) {
    auto [it, inserted] = ids.try_emplace(m, static_cast<int>(ids.size()));
    if (inserted) queue.push_back(m);
    return it->second;
  };
  for (const auto& [m, c] : x) id_of(m);

  // x is kept reduced against the pivots found so far; it vanishes as soon
  // as enough spanning elements have been seen.
  SparseEchelon::Row target;
  for (const auto& [m, c] : x) target[ids.at(m)] = c;

  std::set<SparseVector<Mono>> seen;
  SparseEchelon echelon;
  bool exhausted = false;
  const std::function<void(SparseVector<Mono>)> emit = [&](SparseVector<Mono> element) {
    if (exhausted || target.empty() || element.empty()) return;
    if (!seen.insert(element).second) return;
    if (seen.size() > budget) {
      exhausted = true;
      return;
    }
    SparseEchelon::Row row;
    for (const auto& [m, c] : element) row[id_of(m)] = c;
    if (const SparseEchelon::Row* pivot = echelon.insert(std::move(row))) SparseEchelon::eliminate(target, *pivot);
  };
  while (!queue.empty() && !exhausted && !target.empty()) {
    const Mono m = queue.front();
    queue.pop_front();
    expand(m, emit);
  }
  if (target.empty()) return Membership::Member;
  return exhausted ? Membership::Inconclusive : Membership::NotFound;
}

}  // namespace cqg
