// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

#include "cqg/presentation.hpp"

#include <algorithm>
#include <set>

#include "cqg/error.hpp"

namespace cqg {

namespace {

std::string index_pair(std::size_t j, std::size_t k) {
  return "(" + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
}

void append_entries(const AlgMatrix& m, const std::string& label, std::vector<Relation>& out) {
  for (std::size_t j = 0; j < m.rows(); ++j)
    for (std::size_t k = 0; k < m.cols(); ++k) out.push_back({m.at(j, k), label + index_pair(j, k)});
}

std::string factor_title_unitary(const ScalarMatrix& q) {
  if (q == ScalarMatrix::identity(q.rows())) return "U_" + std::to_string(q.rows()) + "^+";
  return "U_Q^+";
}

std::string factor_title_orthogonal(const ScalarMatrix& f) {
  const std::size_t n = f.rows();
  if (f == ScalarMatrix::identity(n)) return "O_" + std::to_string(n) + "^+";
  if (n % 2 == 0) {
    const std::size_t m = n / 2;
    ScalarMatrix j(n, n);
    for (std::size_t i = 0; i < m; ++i) {
      j.at(i, m + i) = 1;
      j.at(m + i, i) = -1;
    }
    if (f == j) return "O_{J_" + std::to_string(m) + "}^+";
  }
  return "O_F^+";
}

std::vector<GeneratorId> generators_of(const AlgMatrix& u) {
  std::vector<GeneratorId> out;
  for (std::size_t j = 0; j < u.rows(); ++j)
    for (std::size_t k = 0; k < u.cols(); ++k)
      for (const auto& g : u.at(j, k).generators()) out.push_back(g);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// (U1) and (U2) for an arbitrary positive invertible Q.
std::vector<Relation> unitary_relations(const AlgMatrix& u, const ScalarMatrix& q) {
  const std::size_t n = u.rows();
  const AlgMatrix id = AlgMatrix::identity(n);
  const AlgMatrix qm = scalar_embed(q);
  const AlgMatrix qinv = scalar_embed(q.inverse());
  std::vector<Relation> rels;
  append_entries(u.star() * u - id, "U1 U*U-I", rels);
  append_entries(u * u.star() - id, "U1 UU*-I", rels);
  append_entries(u.transpose() * qm * u.bar() * qinv - id, "U2 UtQUbarQinv-I", rels);
  append_entries(qm * u.bar() * qinv * u.transpose() - id, "U2 QUbarQinvUt-I", rels);
  return rels;
}

void check_spec_q(const Rational& q, const std::string& field, bool allow_one) {
  if (q <= 0 || q > 1 || (!allow_one && q == 1)) {
    fail(ErrorKind::Config, field + ": q=" + to_string(q) + (allow_one ? " must lie in (0,1]" : " must lie in (0,1)"));
  }
}

// Column/row of the nonzero entry of each row of a monomial matrix.
std::vector<std::size_t> monomial_permutation(const ScalarMatrix& f) {
  if (!f.is_monomial()) fail(ErrorKind::InvalidArgument, "F is not monomial: " + to_string(f));
  std::vector<std::size_t> perm(f.rows());
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j)
      if (f.at(i, j) != 0) perm[i] = j;
  return perm;
}

}  // namespace

// ---------------------------------------------------------------------------
// BlockSpec

std::string to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::Unitary: return "unitary";
    case BlockKind::OneBlock: return "one-block";
    case BlockKind::CaseI: return "case-I";
    case BlockKind::CaseII: return "case-II";
  }
  return "unknown";
}

BlockKind parse_block_kind(const std::string& text) {
  if (text == "unitary") return BlockKind::Unitary;
  if (text == "one-block") return BlockKind::OneBlock;
  if (text == "case-I") return BlockKind::CaseI;
  if (text == "case-II") return BlockKind::CaseII;
  fail(ErrorKind::Config, "kind: unknown value '" + text + "'");
}

void BlockSpec::validate() const {
  if (blocks.empty()) fail(ErrorKind::Config, "blocks: at least one block is required");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::string field = "blocks[" + std::to_string(i) + "]";
    const bool last = i + 1 == blocks.size();
    const bool zero_allowed = kind == BlockKind::CaseII && last && blocks[i].q == 1;
    if (blocks[i].m < (zero_allowed ? 0 : 1)) fail(ErrorKind::Config, field + ".m: must be positive");
    if (i > 0 && blocks[i].q <= blocks[i - 1].q) {
      fail(ErrorKind::Config, field + ".q: q values must be strictly increasing");
    }
  }
  if (kind != BlockKind::CaseI && trailing != 0) fail(ErrorKind::Config, "trailing: only allowed for case-I");
  if (kind != BlockKind::OneBlock && epsilon != 1) fail(ErrorKind::Config, "epsilon: only allowed for one-block");
  switch (kind) {
    case BlockKind::Unitary:
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (blocks[i].q <= 0) fail(ErrorKind::Config, "blocks[" + std::to_string(i) + "].q: eigenvalues must be positive");
      }
      break;
    case BlockKind::OneBlock:
      if (blocks.size() != 1) fail(ErrorKind::Config, "blocks: one-block takes exactly one block");
      check_spec_q(blocks[0].q, "blocks[0].q", false);
      if (epsilon != 1 && epsilon != -1) fail(ErrorKind::Config, "epsilon: must be 1 or -1");
      break;
    case BlockKind::CaseI:
      for (std::size_t i = 0; i < blocks.size(); ++i) check_spec_q(blocks[i].q, "blocks[" + std::to_string(i) + "].q", false);
      if (trailing < 0) fail(ErrorKind::Config, "trailing: must be nonnegative");
      break;
    case BlockKind::CaseII:
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        check_spec_q(blocks[i].q, "blocks[" + std::to_string(i) + "].q", i + 1 == blocks.size());
      }
      break;
  }
  if (dimension() == 0) fail(ErrorKind::Config, "blocks: the fundamental matrix would be empty");
}

std::size_t BlockSpec::dimension() const {
  std::size_t k = 0;
  for (const auto& b : blocks) k += static_cast<std::size_t>(std::max(b.m, 0));
  if (kind == BlockKind::Unitary) return k;
  return 2 * k + static_cast<std::size_t>(std::max(trailing, 0));
}

// ---------------------------------------------------------------------------
// Presentation

bool Presentation::has_generator(const GeneratorId& g) const {
  return std::binary_search(generators.begin(), generators.end(), g.plain());
}

std::optional<std::pair<std::size_t, std::size_t>> Presentation::position_of(const GeneratorId& g) const {
  const AlgElement target = AlgElement::letter(g.plain());
  for (std::size_t j = 0; j < layout.rows(); ++j)
    for (std::size_t k = 0; k < layout.cols(); ++k)
      if (layout.at(j, k) == target) return std::make_pair(j, k);
  return std::nullopt;
}

ScalarMatrix standard_form_matrix(const BlockSpec& spec) {
  spec.validate();
  const std::size_t n = spec.dimension();
  if (spec.kind == BlockKind::Unitary) {
    std::vector<Rational> diag;
    for (const auto& b : spec.blocks)
      for (int i = 0; i < b.m; ++i) diag.push_back(b.q);
    return ScalarMatrix::diagonal(diag);
  }
  ScalarMatrix f(n, n);
  const Rational lower_sign = spec.kind == BlockKind::CaseII ? Rational(-1)
                              : spec.kind == BlockKind::OneBlock ? Rational(spec.epsilon)
                                                                 : Rational(1);
  std::size_t offset = 0;
  for (const auto& b : spec.blocks) {
    const auto m = static_cast<std::size_t>(b.m);
    const Rational inv = 1 / b.q;
    for (std::size_t i = 0; i < m; ++i) {
      f.at(offset + i, offset + m + i) = b.q;
      f.at(offset + m + i, offset + i) = lower_sign * inv;
    }
    offset += 2 * m;
  }
  for (; offset < n; ++offset) f.at(offset, offset) = 1;
  return f;
}

std::vector<std::pair<Rational, int>> eigenvalue_profile(const ScalarMatrix& f) {
  if (!f.is_monomial()) {
    fail(ErrorKind::InvalidArgument, "eigenvalue_profile: F must be monomial so that F*F is diagonal");
  }
  const ScalarMatrix q = f.adjoint() * f;
  std::map<Rational, int> counts;
  for (std::size_t i = 0; i < q.rows(); ++i) ++counts[q.at(i, i)];
  return {counts.begin(), counts.end()};
}

Presentation build_universal_unitary(const ScalarMatrix& q) {
  if (!q.is_diagonal()) fail(ErrorKind::InvalidArgument, "build_universal_unitary: Q must be diagonal");
  for (std::size_t i = 0; i < q.rows(); ++i) {
    if (q.at(i, i) <= 0) fail(ErrorKind::InvalidArgument, "build_universal_unitary: Q must be positive");
  }
  const std::size_t n = q.rows();
  Presentation p;
  p.layout = AlgMatrix::generic(n, n);
  p.generators = generators_of(p.layout);
  p.relations = unitary_relations(p.layout, q);
  p.raw_relation_count = p.relations.size();
  p.factors.push_back(Factor{0, 0, n, q, std::nullopt, factor_title_unitary(q)});
  p.title = "Pol(" + p.factors.front().title + ")";
  return p;
}

Presentation build_universal_orthogonal(const ScalarMatrix& f) {
  if (!f.is_square() || f.rows() == 0) fail(ErrorKind::Shape, "build_universal_orthogonal: F must be square");
  const ScalarMatrix finv = f.inverse();
  const ScalarMatrix ffbar = f * f.conj();
  Rational sign;
  if (!ffbar.is_scalar_multiple_of_identity(&sign) || (sign != 1 && sign != -1)) {
    fail(ErrorKind::InvalidArgument, "build_universal_orthogonal: F conj(F) = " + to_string(ffbar) + " is not +I or -I");
  }
  const std::size_t n = f.rows();
  const ScalarMatrix q = f.adjoint() * f;
  Presentation p;
  p.layout = AlgMatrix::generic(n, n);
  p.generators = generators_of(p.layout);
  p.relations = unitary_relations(p.layout, q);
  append_entries(p.layout - scalar_embed(f) * p.layout.bar() * scalar_embed(finv), "H U-FUbarFinv", p.relations);
  p.raw_relation_count = p.relations.size();
  p.factors.push_back(Factor{0, 0, n, q, f, factor_title_orthogonal(f)});
  p.title = "Pol(" + p.factors.front().title + ")";
  return p;
}

Presentation free_product(const std::vector<Presentation>& parts) {
  if (parts.empty()) fail(ErrorKind::InvalidArgument, "free_product: no factors");
  Presentation out;
  std::size_t n = 0;
  for (const auto& part : parts) n += part.dimension();
  out.layout = AlgMatrix(n, n);

  int next_tag = 0;
  std::size_t offset = 0;
  std::vector<std::string> titles;
  for (std::size_t idx = 0; idx < parts.size(); ++idx) {
    const Presentation& part = parts[idx];
    std::map<int, int> retag;
    for (const auto& factor : part.factors) retag[factor.tag] = next_tag++;
    Substitution sigma;
    for (const auto& g : part.generators) {
      GeneratorId h = g;
      h.factor = retag.at(g.factor);
      sigma[g] = AlgElement::letter(h);
      out.generators.push_back(h);
    }
    const std::string prefix = parts.size() > 1 ? "f" + std::to_string(idx) + " " : "";
    for (const auto& rel : part.relations) out.relations.push_back({rel.expr.substitute(sigma), prefix + rel.label});
    for (std::size_t j = 0; j < part.dimension(); ++j)
      for (std::size_t k = 0; k < part.dimension(); ++k)
        out.layout.at(offset + j, offset + k) = part.layout.at(j, k).substitute(sigma);
    for (const auto& factor : part.factors) {
      Factor copy = factor;
      copy.tag = retag.at(factor.tag);
      copy.offset += offset;
      out.factors.push_back(copy);
      titles.push_back(factor.title);
    }
    for (const auto& [name, range] : part.blocks) {
      BlockRange shifted = range;
      for (auto& r : shifted.rows) r += offset;
      for (auto& c : shifted.cols) c += offset;
      out.blocks[prefix + name] = shifted;
    }
    out.raw_relation_count += part.raw_relation_count;
    offset += part.dimension();
  }
  // Unitary factors never need reduction.
  out.reality_reduced = std::all_of(parts.begin(), parts.end(), [](const Presentation& part) {
    return part.reality_reduced ||
           std::none_of(part.factors.begin(), part.factors.end(), [](const Factor& f) { return f.f.has_value(); });
  });
  std::sort(out.generators.begin(), out.generators.end());
  if (titles.size() == 1) {
    out.title = "Pol(" + titles.front() + ")";
  } else {
    for (std::size_t i = 0; i < titles.size(); ++i) out.title += (i ? " * " : "") + titles[i];
  }
  return out;
}

namespace {

RealitySubstitution substitution_for_factor(const Presentation& p, const Factor& factor) {
  const ScalarMatrix& f = *factor.f;
  const std::vector<std::size_t> perm = monomial_permutation(f);
  const std::size_t n = f.rows();
  const std::size_t off = factor.offset;

  RealitySubstitution out;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const AlgElement& entry = p.layout.at(off + j, off + k);
      if (entry.size() != 1 || entry.degree() != 1 || entry.terms().begin()->second != 1 ||
          entry.terms().begin()->first[0].star) {
        fail(ErrorKind::InvalidArgument, "reality_substitution: layout entry " + index_pair(j, k) + " is not a generator");
      }
      const GeneratorId g = entry.terms().begin()->first[0];
      const std::size_t pj = perm[j];
      const std::size_t pk = perm[k];
      const bool kept = k < pk || (k == pk && j <= pj);
      if (kept) {
        out.kept.push_back(g);
        continue;
      }
      // (H) at (j,k): u_jk = f_j / f_k * conj(u_{pj,pk}).
      const Rational coeff = f.at(j, pj) / f.at(k, pk);
      const AlgElement& partner = p.layout.at(off + pj, off + pk);
      out.sigma[g] = coeff * partner.adjoint();
    }
  }
  // The kept partner of each redundant generator must itself be kept.
  for (const auto& [g, image] : out.sigma) {
    for (const auto& h : image.generators()) {
      if (out.sigma.count(h)) fail(ErrorKind::Internal, "reality_substitution: inconsistent (H) entry for " + to_string(g));
    }
  }
  std::sort(out.kept.begin(), out.kept.end());
  return out;
}

}  // namespace

RealitySubstitution reality_substitution(const Presentation& p, const ScalarMatrix& f) {
  for (const auto& factor : p.factors) {
    if (factor.f && *factor.f == f) return substitution_for_factor(p, factor);
  }
  fail(ErrorKind::InvalidArgument, "reality_substitution: presentation has no factor with this F");
}

Presentation reduce_reality(const Presentation& p) {
  if (p.reality_reduced) return p;
  Substitution sigma;
  std::set<GeneratorId> dropped;
  for (const auto& factor : p.factors) {
    if (!factor.f) continue;
    const RealitySubstitution rs = substitution_for_factor(p, factor);
    for (const auto& [g, image] : rs.sigma) {
      sigma[g] = image;
      dropped.insert(g);
    }
  }
  Presentation out = p;
  out.relations.clear();
  for (const auto& rel : p.relations) {
    AlgElement reduced = rel.expr.substitute(sigma);
    if (!reduced.is_zero()) out.relations.push_back({std::move(reduced), rel.label});
  }
  out.layout = p.layout.substitute(sigma);
  out.generators.clear();
  for (const auto& g : p.generators)
    if (!dropped.count(g)) out.generators.push_back(g);
  out.reality_reduced = true;
  return out;
}

std::map<std::string, BlockRange> block_ranges(const BlockSpec& spec) {
  spec.validate();
  std::map<std::string, BlockRange> out;
  auto name2 = [](const char* base, std::size_t a, std::size_t b) {
    return std::string(base) + "[" + std::to_string(a + 1) + "," + std::to_string(b + 1) + "]";
  };
  auto span = [](std::size_t start, std::size_t len) {
    std::vector<std::size_t> v(len);
    for (std::size_t i = 0; i < len; ++i) v[i] = start + i;
    return v;
  };

  if (spec.kind == BlockKind::Unitary) {
    std::vector<std::vector<std::size_t>> idx;
    std::size_t off = 0;
    for (const auto& b : spec.blocks) {
      idx.push_back(span(off, static_cast<std::size_t>(b.m)));
      off += static_cast<std::size_t>(b.m);
    }
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t m = 0; m < idx.size(); ++m) out[name2("U", r, m)] = {idx[r], idx[m]};
    return out;
  }

  std::vector<std::vector<std::size_t>> arows, crows;
  std::size_t off = 0;
  for (const auto& b : spec.blocks) {
    const auto m = static_cast<std::size_t>(b.m);
    arows.push_back(span(off, m));
    crows.push_back(span(off + m, m));
    off += 2 * m;
  }
  const std::vector<std::size_t> tail = span(off, static_cast<std::size_t>(spec.trailing));

  if (spec.kind == BlockKind::OneBlock) {
    out["A"] = {arows[0], arows[0]};
    out["C"] = {crows[0], arows[0]};
    return out;
  }
  for (std::size_t r = 0; r < arows.size(); ++r) {
    if (arows[r].empty()) continue;
    for (std::size_t m = 0; m < arows.size(); ++m) {
      if (arows[m].empty()) continue;
      out[name2("A", r, m)] = {arows[r], arows[m]};
      out[name2("C", r, m)] = {crows[r], arows[m]};
    }
  }
  if (spec.kind == BlockKind::CaseI && !tail.empty()) {
    for (std::size_t m = 0; m < arows.size(); ++m) {
      out["X[" + std::to_string(m + 1) + "]"] = {tail, arows[m]};
      out["R[" + std::to_string(m + 1) + "]"] = {arows[m], tail};
    }
    out["Z"] = {tail, tail};
  }
  return out;
}

BlockDecomposition block_decompose(const Presentation& p, const BlockSpec& spec) {
  if (p.dimension() != spec.dimension()) {
    fail(ErrorKind::Shape, "block_decompose: layout is " + std::to_string(p.dimension()) + "x" +
                               std::to_string(p.dimension()) + " but the spec describes N=" +
                               std::to_string(spec.dimension()));
  }
  if (p.spec && p.spec->kind != spec.kind) fail(ErrorKind::Shape, "block_decompose: spec kind does not match presentation");
  BlockDecomposition out;
  for (const auto& [name, range] : block_ranges(spec)) out[name] = p.layout.submatrix(range.rows, range.cols);
  return out;
}

Presentation build_from_spec(const BlockSpec& spec) {
  spec.validate();
  Presentation p = spec.kind == BlockKind::Unitary ? build_universal_unitary(standard_form_matrix(spec))
                                                   : build_universal_orthogonal(standard_form_matrix(spec));
  p.spec = spec;
  p.blocks = block_ranges(spec);
  return p;
}

}  // namespace cqg
