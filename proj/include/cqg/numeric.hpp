// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

// Evaluation of presentations at complex matrices: residuals, classical
// points and a least-squares search for finite-dimensional representations.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cqg/presentation.hpp"

namespace cqg {

using CMatrix = Eigen::MatrixXcd;

/// pi(g) for every plain generator; adjoint letters evaluate to the
/// conjugate transpose.
struct NumAssignment {
  int dim = 1;
  std::map<GeneratorId, CMatrix> values;
};

struct ResidualReport {
  std::vector<double> residuals;  // one per relation, operator norm
  double max = 0;
  double tolerance = 1e-10;

  bool passes() const { return max <= tolerance; }
};

/// Largest singular value, with a power-iteration fallback when the SVD
/// does not produce a finite value.
double operator_norm(const CMatrix& m);

CMatrix evaluate(const AlgElement& a, const NumAssignment& pi);

/// Throws on a missing generator or a dimension mismatch.
ResidualReport eval_residual(const Presentation& p, const NumAssignment& pi, double tolerance = 1e-10);

/// pi(u_jk) = V_jk as 1x1 matrices, after checking each factor block of V:
/// unitarity, Q conj(V) Q^{-1} unitary, and V = F conj(V) F^{-1} for
/// orthogonal factors. Throws Error(InvalidArgument) naming the violated
/// condition and its defect.
NumAssignment classical_point(const Presentation& p, const CMatrix& v, double tolerance = 1e-10);

/// Haar-distributed unitary from a seeded generator (QR of a Gaussian matrix).
CMatrix random_unitary(int n, std::uint64_t seed);

struct SearchOptions {
  int max_iterations = 400;
  double accept = 1e-8;
};

/// Levenberg-Marquardt on the summed squared Frobenius residuals from a
/// seeded random start. Returns a point only if eval_residual certifies it
/// below `accept`. Deterministic for a given seed.
std::optional<NumAssignment> rep_search(const Presentation& p, int n, std::uint64_t seed,
                                        const SearchOptions& opts = {});

struct SearchOutcome {
  std::optional<NumAssignment> point;
  int attempts = 0;
  std::uint64_t seed = 0;  // seed of the successful attempt
  double residual = 0;     // certified max residual of the point
};

/// rep_search with seeds seed, seed+1, ... up to `restarts` attempts.
SearchOutcome rep_search_restarts(const Presentation& p, int n, std::uint64_t seed, int restarts = 50,
                                  const SearchOptions& opts = {});

}  // namespace cqg
