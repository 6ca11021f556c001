// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

// Quotients by generators, canonical relation sets, the expected Kac targets
// and the comparison of a derived quotient against its target.

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "cqg/algebra.hpp"
#include "cqg/presentation.hpp"
#include "cqg/span.hpp"

namespace cqg {

/// Sends each listed generator (and its adjoint) to zero, drops relations
/// that vanish and removes the generators.
Presentation quotient_by_zero(const Presentation& p, const std::vector<GeneratorId>& gens);

/// Relation scaled so that its least word has coefficient one, and the
/// smaller of that and the same normalization of its adjoint.
AlgElement normalize_relation(const AlgElement& r);

/// Normalized, sorted, duplicate-free relations. Idempotent.
Presentation canonicalize(const Presentation& p);

struct Renaming {
  std::map<GeneratorId, GeneratorId> map;

  bool is_injective() const;
  Renaming inverse() const;
  /// Applies the renaming to every letter (and adjoint letter) of `a`.
  AlgElement apply(const AlgElement& a) const;
};

struct KacTarget {
  Presentation target;
  Renaming renaming;
};

/// Free product of the unitary factors Pol(U_M^+) with the orthogonal tail
/// (Pol(O_{N-2K}^+) for case I, Pol(O_J^+) for case II), plus the structural
/// renaming from the diagonal blocks of the source layout.
KacTarget expected_kac_target(const BlockSpec& spec);

enum class MatchMode { ExactSet, BoundedIdeal };

std::string to_string(MatchMode mode);

struct MatchVerdict {
  bool matched = false;
  MatchMode mode = MatchMode::ExactSet;
  Renaming renaming;
  std::vector<AlgElement> unmatched_derived;
  std::vector<AlgElement> unmatched_target;
  /// Generators of the derived side the renaming does not cover.
  std::vector<GeneratorId> unmapped;
  /// Generators of the target side outside the image of the renaming.
  std::vector<GeneratorId> uncovered;
};

/// Exact-set comparison after renaming and canonicalization; if that fails,
/// each unmatched relation is tested for membership in the other side's
/// ideal at the given degree bound.
MatchVerdict match_presentations(const Presentation& p, const Presentation& t, const Renaming& rho,
                                 int membership_bound = 4);

/// Relations closed under the adjoint (each scaled so that its least word has
/// coefficient one), indexed by the words occurring in them.
class RelationIndex {
 public:
  explicit RelationIndex(const std::vector<AlgElement>& rels);

  const std::vector<AlgElement>& relations() const noexcept { return closed_; }

  /// f(left, r, right) for every factorization m = left * t * right with t a
  /// word of relation r and |left| + deg r + |right| <= room.
  template <class F>
  void for_each_occurrence(const Word& m, std::size_t room, F&& f) const {
    const std::size_t n = m.size();
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t len = 0; i + len <= n; ++len) {
        auto it = by_term_.find(m.subword(i, len));
        if (it == by_term_.end()) continue;
        const Word left = m.subword(0, i);
        const Word right = m.subword(i + len, n - i - len);
        for (const std::size_t ri : it->second) {
          const AlgElement& r = closed_[ri];
          if (left.size() + r.degree() + right.size() <= room) f(left, r, right);
        }
      }
    }
  }

 private:
  std::vector<AlgElement> closed_;
  std::map<Word, std::vector<std::size_t>> by_term_;
};

struct MembershipOptions {
  int bound = 4;
  /// Spanning elements examined before giving up.
  std::size_t budget = 400000;
};

/// Is x in the span of { w r w' : r in rels and rels*, |w| + deg r + |w'| <= bound }?
/// NotFound is "not found at this bound", never a disproof.
Membership ideal_membership(const AlgElement& x, const std::vector<AlgElement>& rels, const MembershipOptions& opts);

/// Boolean form; false covers both NotFound and an exhausted budget.
bool ideal_membership_bounded(const AlgElement& x, const std::vector<AlgElement>& rels, int bound);

}  // namespace cqg
