// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

#include "cqg/quotient.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "cqg/error.hpp"

namespace cqg {

namespace {

AlgElement scale_leading(const AlgElement& r) {
  if (r.is_zero()) return r;
  return r * Rational(1 / r.terms().begin()->second);
}

struct LabelledRelation {
  AlgElement expr;
  std::string label;
};

std::vector<LabelledRelation> canonical_set(std::vector<LabelledRelation> rels) {
  for (auto& r : rels) r.expr = normalize_relation(r.expr);
  rels.erase(std::remove_if(rels.begin(), rels.end(), [](const LabelledRelation& r) { return r.expr.is_zero(); }),
             rels.end());
  std::sort(rels.begin(), rels.end(), [](const LabelledRelation& a, const LabelledRelation& b) {
    const auto c = compare(a.expr, b.expr);
    if (c != 0) return c < 0;
    return a.label < b.label;
  });
  rels.erase(std::unique(rels.begin(), rels.end(),
                         [](const LabelledRelation& a, const LabelledRelation& b) { return a.expr == b.expr; }),
             rels.end());
  return rels;
}

std::vector<AlgElement> canonical_elements(const std::vector<AlgElement>& rels) {
  std::vector<LabelledRelation> tmp;
  for (const auto& r : rels) tmp.push_back({r, ""});
  std::vector<AlgElement> out;
  for (auto& r : canonical_set(std::move(tmp))) out.push_back(std::move(r.expr));
  return out;
}

bool element_less(const AlgElement& a, const AlgElement& b) { return compare(a, b) < 0; }

std::vector<std::size_t> span(std::size_t start, std::size_t len) {
  std::vector<std::size_t> v(len);
  for (std::size_t i = 0; i < len; ++i) v[i] = start + i;
  return v;
}

// Maps the source block rows x cols onto the local indices of target factor `tag`,
// with the given local row offset.
void map_block(Renaming& rho, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols, int tag,
               std::size_t row_offset = 0) {
  for (std::size_t a = 0; a < rows.size(); ++a) {
    for (std::size_t b = 0; b < cols.size(); ++b) {
      rho.map[make_generator(static_cast<int>(rows[a] + 1), static_cast<int>(cols[b] + 1))] =
          make_generator(static_cast<int>(row_offset + a + 1), static_cast<int>(b + 1), tag);
    }
  }
}

}  // namespace

Presentation quotient_by_zero(const Presentation& p, const std::vector<GeneratorId>& gens) {
  Substitution sigma;
  std::set<GeneratorId> killed;
  for (const auto& g : gens) {
    const GeneratorId plain = g.plain();
    if (!p.has_generator(plain)) fail(ErrorKind::InvalidArgument, "quotient_by_zero: unknown generator " + to_string(plain));
    sigma[plain] = AlgElement();
    killed.insert(plain);
  }
  if (killed.empty()) return p;
  Presentation out = p;
  out.relations.clear();
  for (const auto& rel : p.relations) {
    AlgElement reduced = rel.expr.substitute(sigma);
    if (!reduced.is_zero()) out.relations.push_back({std::move(reduced), rel.label});
  }
  out.layout = p.layout.substitute(sigma);
  out.generators.clear();
  for (const auto& g : p.generators)
    if (!killed.count(g)) out.generators.push_back(g);
  return out;
}

AlgElement normalize_relation(const AlgElement& r) {
  if (r.is_zero()) return r;
  AlgElement own = scale_leading(r);
  AlgElement adj = scale_leading(r.adjoint());
  return compare(own, adj) <= 0 ? own : adj;
}

Presentation canonicalize(const Presentation& p) {
  std::vector<LabelledRelation> rels;
  rels.reserve(p.relations.size());
  for (const auto& r : p.relations) rels.push_back({r.expr, r.label});
  Presentation out = p;
  out.relations.clear();
  for (auto& r : canonical_set(std::move(rels))) out.relations.push_back({std::move(r.expr), std::move(r.label)});
  return out;
}

bool Renaming::is_injective() const {
  std::set<GeneratorId> image;
  for (const auto& [from, to] : map)
    if (!image.insert(to.plain()).second) return false;
  return true;
}

Renaming Renaming::inverse() const {
  if (!is_injective()) fail(ErrorKind::InvalidArgument, "Renaming::inverse: renaming is not injective");
  Renaming out;
  for (const auto& [from, to] : map) out.map[to.plain()] = from.plain();
  return out;
}

AlgElement Renaming::apply(const AlgElement& a) const {
  Substitution sigma;
  for (const auto& [from, to] : map) sigma[from.plain()] = AlgElement::letter(to.plain());
  return a.substitute(sigma);
}

KacTarget expected_kac_target(const BlockSpec& spec) {
  spec.validate();
  std::vector<Presentation> parts;
  Renaming rho;
  auto add_unitary = [&](const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    const int tag = static_cast<int>(parts.size());
    parts.push_back(build_universal_unitary(ScalarMatrix::identity(rows.size())));
    map_block(rho, rows, cols, tag);
  };

  std::size_t off = 0;
  switch (spec.kind) {
    case BlockKind::Unitary:
      for (const auto& b : spec.blocks) {
        const auto idx = span(off, static_cast<std::size_t>(b.m));
        add_unitary(idx, idx);
        off += idx.size();
      }
      break;
    case BlockKind::OneBlock:
    case BlockKind::CaseI:
    case BlockKind::CaseII:
      for (const auto& b : spec.blocks) {
        const auto m = static_cast<std::size_t>(b.m);
        const auto arows = span(off, m);
        const auto crows = span(off + m, m);
        off += 2 * m;
        if (m == 0) continue;
        if (spec.kind == BlockKind::CaseII && b.q == 1) {
          BlockSpec j{BlockKind::CaseII, {Block{1, b.m}}, 0, 1};
          const int tag = static_cast<int>(parts.size());
          parts.push_back(build_universal_orthogonal(standard_form_matrix(j)));
          map_block(rho, arows, arows, tag);
          map_block(rho, crows, arows, tag, m);
        } else {
          add_unitary(arows, arows);
        }
      }
      if (spec.kind == BlockKind::CaseI && spec.trailing > 0) {
        const auto tail = span(off, static_cast<std::size_t>(spec.trailing));
        const int tag = static_cast<int>(parts.size());
        parts.push_back(build_universal_orthogonal(ScalarMatrix::identity(tail.size())));
        map_block(rho, tail, tail, tag);
      }
      break;
  }
  if (parts.empty()) fail(ErrorKind::Config, "expected_kac_target: the spec has no nonempty block");
  return {canonicalize(reduce_reality(free_product(parts))), std::move(rho)};
}

std::string to_string(MatchMode mode) { return mode == MatchMode::ExactSet ? "exact-set" : "bounded-ideal"; }

MatchVerdict match_presentations(const Presentation& p, const Presentation& t, const Renaming& rho,
                                 int membership_bound) {
  if (!rho.is_injective()) fail(ErrorKind::InvalidArgument, "match_presentations: renaming is not injective");
  MatchVerdict verdict;
  verdict.renaming = rho;
  std::set<GeneratorId> image;
  for (const auto& g : p.generators) {
    auto it = rho.map.find(g);
    if (it == rho.map.end()) {
      verdict.unmapped.push_back(g);
    } else {
      image.insert(it->second.plain());
    }
  }
  for (const auto& g : t.generators)
    if (!image.count(g)) verdict.uncovered.push_back(g);

  std::vector<AlgElement> derived;
  for (const auto& r : p.relations) derived.push_back(rho.apply(r.expr));
  derived = canonical_elements(derived);
  std::vector<AlgElement> target;
  for (const auto& r : t.relations) target.push_back(r.expr);
  target = canonical_elements(target);

  std::set_difference(derived.begin(), derived.end(), target.begin(), target.end(),
                      std::back_inserter(verdict.unmatched_derived), element_less);
  std::set_difference(target.begin(), target.end(), derived.begin(), derived.end(),
                      std::back_inserter(verdict.unmatched_target), element_less);

  const bool generators_ok = verdict.unmapped.empty() && verdict.uncovered.empty();
  if (verdict.unmatched_derived.empty() && verdict.unmatched_target.empty()) {
    verdict.matched = generators_ok;
    return verdict;
  }
  verdict.mode = MatchMode::BoundedIdeal;
  if (!generators_ok) return verdict;
  MembershipOptions opts;
  opts.bound = membership_bound;
  auto all_members = [&](const std::vector<AlgElement>& xs, const std::vector<AlgElement>& rels) {
    return std::all_of(xs.begin(), xs.end(), [&](const AlgElement& x) {
      if (static_cast<int>(x.degree()) > membership_bound) return false;
      return ideal_membership(x, rels, opts) == Membership::Member;
    });
  };
  verdict.matched = all_members(verdict.unmatched_derived, target) && all_members(verdict.unmatched_target, derived);
  return verdict;
}

RelationIndex::RelationIndex(const std::vector<AlgElement>& rels) {
  for (const auto& r : rels) {
    if (r.is_zero()) continue;
    closed_.push_back(scale_leading(r));
    closed_.push_back(scale_leading(r.adjoint()));
  }
  std::sort(closed_.begin(), closed_.end(), element_less);
  closed_.erase(std::unique(closed_.begin(), closed_.end()), closed_.end());
  for (std::size_t i = 0; i < closed_.size(); ++i)
    for (const auto& [w, c] : closed_[i].terms()) by_term_[w].push_back(i);
}

Membership ideal_membership(const AlgElement& x, const std::vector<AlgElement>& rels, const MembershipOptions& opts) {
  if (opts.bound < 0 || static_cast<int>(x.degree()) > opts.bound) {
    fail(ErrorKind::InvalidArgument, "ideal_membership: bound " + std::to_string(opts.bound) +
                                         " is below the degree of the element (" + std::to_string(x.degree()) + ")");
  }
  const RelationIndex index(rels);
  const auto bound = static_cast<std::size_t>(opts.bound);
  const std::function<void(const Word&, const std::function<void(SparseVector<Word>)>&)> expand =
      [&](const Word& m, const std::function<void(SparseVector<Word>)>& emit) {
        index.for_each_occurrence(m, bound, [&](const Word& left, const AlgElement& r, const Word& right) {
          SparseVector<Word> element;
          for (const auto& [w, c] : r.terms()) element[left * w * right] = c;
          emit(std::move(element));
        });
      };
  SparseVector<Word> target(x.terms().begin(), x.terms().end());
  return span_membership<Word>(target, expand, opts.budget);
}

bool ideal_membership_bounded(const AlgElement& x, const std::vector<AlgElement>& rels, int bound) {
  MembershipOptions opts;
  opts.bound = bound;
  return ideal_membership(x, rels, opts) == Membership::Member;
}

}  // namespace cqg
