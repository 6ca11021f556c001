// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "cqg/rational.hpp"

namespace cqg {

/// maximize c.x subject to A x = b, x >= 0, over exact rationals.
struct LinearProgram {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<Rational> c;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
  /// Dual solution at the optimum: A^T y >= c and b.y = value.
  std::vector<Rational> y;
};

/// Two-phase dense tableau simplex with Bland's rule.
LpResult solve_lp(const LinearProgram& lp);

}  // namespace cqg
