// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

// Random generators and small helpers shared by the unit, property and
// acceptance binaries.

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cqg/algebra.hpp"
#include "cqg/presentation.hpp"

namespace cqg::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return uniform(0, 1) == 1; }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(uniform(0, static_cast<int>(xs.size()) - 1))];
  }

  // Small nonzero rational p/q with |p| <= 5 and 1 <= q <= 4.
  Rational rational() {
    int p = 0;
    while (p == 0) p = uniform(-5, 5);
    Rational r(p, uniform(1, 4));
    r.canonicalize();
    return r;
  }

  GeneratorId letter(int n, int factors = 1) {
    GeneratorId g = make_generator(uniform(1, n), uniform(1, n), uniform(0, factors - 1));
    g.star = coin();
    return g;
  }

  Word word(int n, int max_len, int factors = 1) {
    std::vector<GeneratorId> letters;
    const int len = uniform(0, max_len);
    for (int i = 0; i < len; ++i) letters.push_back(letter(n, factors));
    return Word(std::move(letters));
  }

  Word word_over(const std::vector<GeneratorId>& alphabet, int max_len) {
    std::vector<GeneratorId> letters;
    const int len = uniform(0, max_len);
    for (int i = 0; i < len; ++i) {
      GeneratorId g = pick(alphabet);
      g.star = coin();
      letters.push_back(g);
    }
    return Word(std::move(letters));
  }

  AlgElement element(int n, int max_terms, int max_len, int factors = 1) {
    AlgElement out;
    const int terms = uniform(0, max_terms);
    for (int i = 0; i < terms; ++i) out.add_term(word(n, max_len, factors), rational());
    return out;
  }

  AlgElement element_over(const std::vector<GeneratorId>& alphabet, int max_terms, int max_len) {
    AlgElement out;
    const int terms = uniform(0, max_terms);
    for (int i = 0; i < terms; ++i) out.add_term(word_over(alphabet, max_len), rational());
    return out;
  }

  // A valid spec of modest size for every kind.
  BlockSpec spec() {
    static const std::vector<Rational> qs{Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(2, 3)};
    BlockSpec s;
    switch (uniform(0, 3)) {
      case 0: {
        s.kind = BlockKind::OneBlock;
        s.blocks = {{pick(qs), uniform(1, 2)}};
        s.epsilon = coin() ? 1 : -1;
        break;
      }
      case 1: {
        s.kind = BlockKind::CaseI;
        const int r = uniform(1, 2);
        for (int i = 0; i < r; ++i) s.blocks.push_back({qs[static_cast<std::size_t>(i == 0 ? uniform(0, 1) : 2)], 1});
        s.trailing = uniform(0, 2);
        break;
      }
      case 2: {
        s.kind = BlockKind::CaseII;
        s.blocks.push_back({qs[static_cast<std::size_t>(uniform(0, 2))], 1});
        if (coin()) s.blocks.push_back({Rational(1), uniform(0, 1)});
        break;
      }
      default: {
        s.kind = BlockKind::Unitary;
        s.blocks.push_back({Rational(1, uniform(2, 4)), 1});
        s.blocks.push_back({Rational(1), uniform(1, 2)});
        break;
      }
    }
    return s;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline GeneratorId u(int j, int k, int factor = 0) { return make_generator(j, k, factor); }
inline AlgElement el(int j, int k, int factor = 0) { return AlgElement::letter(u(j, k, factor)); }
inline AlgElement el_star(int j, int k, int factor = 0) { return AlgElement::letter(u(j, k, factor).adjoint()); }

inline BlockSpec one_block(Rational q, int m, int epsilon = 1) {
  return {BlockKind::OneBlock, {{std::move(q), m}}, 0, epsilon};
}

inline ScalarMatrix symplectic(int m) {
  return standard_form_matrix({BlockKind::CaseII, {{Rational(1), m}}, 0, 1});
}

// Presentations compared on generators and relations (labels included).
inline bool same_relations(const Presentation& a, const Presentation& b) {
  if (a.generators != b.generators || a.relations.size() != b.relations.size()) return false;
  for (std::size_t i = 0; i < a.relations.size(); ++i) {
    if (a.relations[i].expr != b.relations[i].expr || a.relations[i].label != b.relations[i].label) return false;
  }
  return true;
}

}  // namespace cqg::testing
