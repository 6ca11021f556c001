// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

// Generator/relation presentations of Pol(U_Q^+) and Pol(O_F^+), the
// standard forms of F, free products and the block bookkeeping of the
// fundamental matrix.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cqg/algebra.hpp"

namespace cqg {

enum class BlockKind { Unitary, OneBlock, CaseI, CaseII };

std::string to_string(BlockKind kind);
/// Accepts "unitary", "one-block", "case-I", "case-II".
BlockKind parse_block_kind(const std::string& text);

struct Block {
  Rational q;
  int m = 1;
  friend bool operator==(const Block&, const Block&) = default;
};

/// Shape of the matrix F (or of the diagonal Q for the unitary family).
///
///  - unitary:   distinct eigenvalues q_1 < ... < q_r of Q, multiplicities M_i.
///  - one-block: a single block (q, M) with 0 < q < 1 and epsilon = +-1.
///  - case-I:    0 < q_1 < ... < q_r < 1 plus `trailing` = N - 2K.
///  - case-II:   0 < q_1 < ... < q_r <= 1; only the last block may have q = 1,
///               and that block alone may have M = 0.
struct BlockSpec {
  BlockKind kind = BlockKind::Unitary;
  std::vector<Block> blocks;
  int trailing = 0;
  int epsilon = 1;

  /// Throws cqg::Error(Config) naming the offending field.
  void validate() const;
  /// Size N of the fundamental matrix.
  std::size_t dimension() const;

  friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

struct Relation {
  AlgElement expr;  // asserted to be zero
  std::string label;
};

/// Rows and columns (0-based) of a named block inside the fundamental matrix.
struct BlockRange {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
};

/// One free-product factor: a diagonal block of the fundamental matrix
/// carrying its own twist Q and, for orthogonal factors, its F.
struct Factor {
  int tag = 0;
  std::size_t offset = 0;
  std::size_t size = 0;
  ScalarMatrix q;
  std::optional<ScalarMatrix> f;
  std::string title;
};

class Presentation {
 public:
  std::string title;
  /// Plain letters, sorted.
  std::vector<GeneratorId> generators;
  std::vector<Relation> relations;
  /// Fundamental matrix. Entry (j,k) is the generator u_{jk} or, after
  /// elimination, the expression it was replaced by.
  AlgMatrix layout;
  std::vector<Factor> factors;
  std::map<std::string, BlockRange> blocks;
  std::optional<BlockSpec> spec;
  /// Redundant generators of orthogonal factors have been eliminated.
  bool reality_reduced = false;
  /// Relation count as produced by the builder, before deduplication.
  std::size_t raw_relation_count = 0;

  std::size_t dimension() const { return layout.rows(); }
  bool has_generator(const GeneratorId& g) const;
  /// Position of a plain generator in the layout, if it sits there verbatim.
  std::optional<std::pair<std::size_t, std::size_t>> position_of(const GeneratorId& g) const;
};

/// F for the orthogonal kinds, diag(Q) for the unitary kind. Pairs of
/// antidiagonal q-blocks in ascending q order, identity tail last.
ScalarMatrix standard_form_matrix(const BlockSpec& spec);

/// Sorted eigenvalues of Q = F*F with multiplicities. F must be monomial.
std::vector<std::pair<Rational, int>> eigenvalue_profile(const ScalarMatrix& f);

/// Relations (U1) and (U2) for diagonal, positive, invertible Q.
Presentation build_universal_unitary(const ScalarMatrix& q);

/// (U1), (U2) with Q = F*F, plus (H): U = F conj(U) F^{-1}. Requires
/// F conj(F) = +I or -I.
Presentation build_universal_orthogonal(const ScalarMatrix& f);

/// Disjoint union of generators (factor tags renumbered 0,1,...) and of
/// relations; block-diagonal layout.
Presentation free_product(const std::vector<Presentation>& parts);

struct RealitySubstitution {
  Substitution sigma;
  std::vector<GeneratorId> kept;
};

/// Solves (H) for the redundant generators of a monomial F: each one becomes
/// a scalar times the adjoint of a kept generator.
RealitySubstitution reality_substitution(const Presentation& p, const ScalarMatrix& f);

/// Applies reality_substitution to every orthogonal factor of p and drops
/// the eliminated generators and the relations that became zero.
Presentation reduce_reality(const Presentation& p);

/// Block ranges of the canonical layout for a spec: A[r,m], C[r,m], X[m],
/// R[r], Z (case I); A[m,n], C[m,n] (case II); A, C (one-block);
/// U[r,m] (unitary). Indices in names are 1-based.
std::map<std::string, BlockRange> block_ranges(const BlockSpec& spec);

using BlockDecomposition = std::map<std::string, AlgMatrix>;

/// Named views of the fundamental matrix.
BlockDecomposition block_decompose(const Presentation& p, const BlockSpec& spec);

/// Builds the presentation described by a spec (unreduced) and records the
/// spec and block ranges on it.
Presentation build_from_spec(const BlockSpec& spec);

}  // namespace cqg
