// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

#include "cqg/trace.hpp"

#include <algorithm>
#include <set>

#include "cqg/error.hpp"
#include "cqg/lp.hpp"
#include "cqg/quotient.hpp"

namespace cqg {

namespace {

Word least_rotation(const Word& w) {
  Word best = w;
  for (std::size_t s = 1; s < w.size(); ++s) {
    Word r = w.rotated(s);
    if (r < best) best = std::move(r);
  }
  return best;
}

void accumulate(std::map<Word, Rational>& target, const Word& key, const Rational& value) {
  if (value == 0) return;
  auto [it, inserted] = target.try_emplace(key, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) target.erase(it);
  }
}

std::string format_terms(const std::map<Word, Rational>& terms, const char* part) {
  std::string out;
  for (const auto& [w, c] : terms) {
    out += (c < 0 ? " - " : " + ");
    const Rational mag = abs(c);
    if (mag != 1) out += to_string(mag) + " ";
    out += std::string(part) + "(" + to_string(w) + ")";
  }
  return out;
}

// All words of length <= degree over the letters of p.
std::vector<Word> words_up_to(const Presentation& p, int degree) {
  std::vector<GeneratorId> letters;
  for (const auto& g : p.generators) {
    letters.push_back(g);
    letters.push_back(g.adjoint());
  }
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (int d = 0; d < degree; ++d) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (const auto& l : letters) next.push_back(w * Word{l});
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// Scale a combination to coprime integers, keeping the sign.
void make_primitive(std::map<std::size_t, Rational>& comb) {
  mpz_class lcm_den = 1;
  mpz_class gcd_num = 0;
  for (const auto& [i, c] : comb) {
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), c.get_num_mpz_t());
  }
  if (gcd_num == 0) return;
  const Rational scale(lcm_den, gcd_num);
  for (auto& [i, c] : comb) c *= scale;
}

TraceExpr combine(const TraceEquationSet& set, const std::vector<std::pair<std::size_t, Rational>>& terms) {
  TraceExpr out;
  for (const auto& [idx, mult] : terms) {
    if (idx >= set.equations.size()) fail(ErrorKind::InvalidArgument, "certificate cites a missing equation");
    out.add(set.equations[idx].expr, mult);
  }
  return out;
}

}  // namespace

CanonicalTrace cyclic_canonical(const Word& w) {
  CanonicalTrace out;
  if (w.empty()) {
    out.real = true;
    return out;
  }
  Word own = least_rotation(w);
  Word adj = least_rotation(w.adjoint());
  if (own == adj) {
    out.symbol = std::move(own);
    out.real = true;
  } else if (own < adj) {
    out.symbol = std::move(own);
  } else {
    out.symbol = std::move(adj);
    out.imag_sign = -1;
  }
  return out;
}

TraceExpr& TraceExpr::add(const TraceExpr& other, const Rational& factor) {
  if (factor == 0) return *this;
  constant += factor * other.constant;
  for (const auto& [w, c] : other.re) accumulate(re, w, Rational(factor * c));
  for (const auto& [w, c] : other.im) accumulate(im, w, Rational(factor * c));
  return *this;
}

std::string to_string(const TraceExpr& e) {
  std::string out = format_terms(e.re, "Re") + format_terms(e.im, "Im");
  if (e.constant != 0) return to_string(e.constant) + out;
  if (out.empty()) return "0";
  // Drop the sign separator of the leading term.
  return out.compare(0, 3, " - ") == 0 ? "-" + out.substr(3) : out.substr(3);
}

TraceExpr trace_of(const AlgElement& a) {
  TraceExpr out;
  for (const auto& [w, c] : a.terms()) {
    if (w.empty()) {
      out.constant += c;
      continue;
    }
    const CanonicalTrace ct = cyclic_canonical(w);
    accumulate(out.re, ct.symbol, c);
    if (!ct.real) accumulate(out.im, ct.symbol, Rational(c * ct.imag_sign));
  }
  return out;
}

Word nonnegative_symbol(const GeneratorId& g) {
  return cyclic_canonical(Word{g.plain().adjoint(), g.plain()}).symbol;
}

bool TraceEquationSet::is_nonnegative(const Word& symbol) const {
  return std::binary_search(nonnegative.begin(), nonnegative.end(), symbol);
}

std::vector<Word> TraceEquationSet::unbounded_symbols() const {
  std::set<Word> bounded;
  for (const auto& eq : equations) {
    const TraceExpr& e = eq.expr;
    if (e.constant == 0 || !e.im.empty() || e.re.empty()) continue;
    const bool ok = std::all_of(e.re.begin(), e.re.end(), [&](const auto& term) {
      return is_nonnegative(term.first) && sgn(term.second) == -sgn(e.constant);
    });
    if (!ok) continue;
    for (const auto& [w, c] : e.re) bounded.insert(w);
  }
  std::vector<Word> out;
  for (const auto& s : nonnegative)
    if (!bounded.count(s)) out.push_back(s);
  return out;
}

TraceEquationSet derive_trace_equations(const Presentation& p, int degree) {
  if (degree < 0) fail(ErrorKind::InvalidArgument, "derive_trace_equations: negative degree");
  TraceEquationSet set;
  const std::vector<Word> multipliers = words_up_to(p, degree);
  for (const auto& rel : p.relations) {
    for (const auto& w : multipliers) {
      const TraceExpr full = trace_of(AlgElement::monomial(w) * rel.expr);
      const std::string tag = w.empty() ? rel.label : rel.label + " * " + to_string(w);
      TraceExpr real_part;
      real_part.constant = full.constant;
      real_part.re = full.re;
      if (!real_part.is_zero()) set.equations.push_back({std::move(real_part), tag + " re"});
      if (!full.im.empty()) {
        TraceExpr imag_part;
        imag_part.im = full.im;
        set.equations.push_back({std::move(imag_part), tag + " im"});
      }
    }
  }
  for (const auto& g : p.generators) {
    const Word s = nonnegative_symbol(g);
    set.nonnegative.push_back(s);
    set.generator_of_symbol[s] = g;
  }
  std::sort(set.nonnegative.begin(), set.nonnegative.end());
  set.nonnegative.erase(std::unique(set.nonnegative.begin(), set.nonnegative.end()), set.nonnegative.end());
  return set;
}

bool verify_certificate(const TraceEquationSet& equations, const Certificate& cert, std::string* why) {
  auto reject = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  TraceExpr recombined;
  try {
    recombined = combine(equations, cert.terms);
  } catch (const Error& e) {
    return reject(e.what());
  }
  if (!(recombined == cert.combination)) return reject("recombination differs from the stored combination");
  if (recombined.constant != 0) return reject("constant term is " + to_string(recombined.constant));
  if (!recombined.im.empty()) return reject("imaginary part does not vanish");
  for (const auto& [w, c] : recombined.re) {
    if (!equations.is_nonnegative(w)) return reject("free symbol " + to_string(w) + " survives");
    if (c < 0) return reject("negative coefficient on " + to_string(w));
  }
  auto it = recombined.re.find(cert.target);
  if (it == recombined.re.end() || it->second <= 0) return reject("target coefficient is not positive");
  return true;
}

// ---------------------------------------------------------------------------
// ForcedZeroSolver

ForcedZeroSolver::ForcedZeroSolver(const TraceEquationSet& equations) : equations_(equations) {
  // Column numbering: free unknowns first (real then imaginary parts), then
  // the nonnegative unknowns, then the constant.
  std::set<Word> free_real, imag;
  for (const auto& eq : equations.equations) {
    for (const auto& [w, c] : eq.expr.re)
      if (!equations.is_nonnegative(w)) free_real.insert(w);
    for (const auto& [w, c] : eq.expr.im) imag.insert(w);
  }
  int col = 0;
  for (const auto& w : free_real) real_column_[w] = col++;
  for (const auto& w : imag) imag_column_[w] = col++;
  free_columns_ = col;
  for (const auto& w : equations.nonnegative) real_column_[w] = col++;

  const int constant_col = col;
  for (std::size_t i = 0; i < equations.equations.size(); ++i) {
    const TraceExpr& e = equations.equations[i].expr;
    Row row;
    for (const auto& [w, c] : e.re) row.coeffs[real_column_.at(w)] = c;
    for (const auto& [w, c] : e.im) row.coeffs[imag_column_.at(w)] = c;
    if (e.constant != 0) row.coeffs[constant_col] = e.constant;
    row.combination[i] = 1;
    reduce(row, false);
    if (row.coeffs.empty()) continue;
    const int lead = row.coeffs.begin()->first;
    const Rational inv = 1 / row.coeffs.begin()->second;
    for (auto& [c, v] : row.coeffs) v *= inv;
    for (auto& [c, v] : row.combination) v *= inv;
    pivots_.emplace(lead, std::move(row));
  }
  for (const auto& [lead, row] : pivots_) {
    if (lead == constant_col) {
      fail(ErrorKind::Undetermined, "trace equations are inconsistent: no tracial state satisfies them");
    }
    if (lead >= free_columns_) {
      Row r = row;
      auto cit = r.coeffs.find(constant_col);
      if (cit != r.coeffs.end()) {
        r.constant = cit->second;
        r.coeffs.erase(cit);
      }
      reduced_.push_back(std::move(r));
    }
  }
}

void ForcedZeroSolver::reduce(Row& row, bool free_only) const {
  auto it = row.coeffs.begin();
  while (it != row.coeffs.end()) {
    const int col = it->first;
    if (free_only && col >= free_columns_) break;
    auto pit = pivots_.find(col);
    if (pit == pivots_.end()) {
      ++it;
      continue;
    }
    const Rational factor = it->second;
    for (const auto& [c, v] : pit->second.coeffs) {
      auto [slot, inserted] = row.coeffs.try_emplace(c, -factor * v);
      if (!inserted) {
        slot->second -= factor * v;
        if (slot->second == 0) row.coeffs.erase(slot);
      }
    }
    for (const auto& [e, v] : pit->second.combination) {
      auto [slot, inserted] = row.combination.try_emplace(e, -factor * v);
      if (!inserted) {
        slot->second -= factor * v;
        if (slot->second == 0) row.combination.erase(slot);
      }
    }
    it = row.coeffs.upper_bound(col);
  }
}

std::optional<Certificate> ForcedZeroSolver::forced_zero(const Word& target) const {
  if (!equations_.is_nonnegative(target)) {
    fail(ErrorKind::InvalidArgument, "forced_zero: " + to_string(target) + " is not a nonnegative symbol");
  }
  const std::size_t n = equations_.nonnegative.size();
  LinearProgram lp;
  lp.c.assign(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    if (equations_.nonnegative[j] == target) lp.c[j] = 1;
  for (const auto& row : reduced_) {
    std::vector<Rational> a(n, 0);
    for (const auto& [col, v] : row.coeffs) a[static_cast<std::size_t>(col - free_columns_)] = v;
    lp.a.push_back(std::move(a));
    lp.b.push_back(-row.constant);
  }
  const LpResult res = solve_lp(lp);
  if (res.status == LpStatus::Unbounded) {
    fail(ErrorKind::Undetermined, "forced_zero: LP unbounded for " + to_string(target));
  }
  if (res.status == LpStatus::Infeasible) {
    fail(ErrorKind::Undetermined, "forced_zero: LP infeasible for " + to_string(target));
  }
  if (res.value != 0) return std::nullopt;

  // Dual multipliers on the reduced rows, pulled back to the equations.
  std::map<std::size_t, Rational> comb;
  for (std::size_t i = 0; i < reduced_.size(); ++i) {
    if (res.y[i] == 0) continue;
    for (const auto& [e, v] : reduced_[i].combination) {
      auto [slot, inserted] = comb.try_emplace(e, res.y[i] * v);
      if (!inserted) {
        slot->second += res.y[i] * v;
        if (slot->second == 0) comb.erase(slot);
      }
    }
  }
  make_primitive(comb);
  Certificate cert;
  cert.target = target;
  cert.terms.assign(comb.begin(), comb.end());
  cert.combination = combine(equations_, cert.terms);
  std::string why;
  if (!verify_certificate(equations_, cert, &why)) {
    fail(ErrorKind::Internal, "forced_zero: dual certificate for " + to_string(target) + " failed verification: " + why);
  }
  return cert;
}

std::optional<std::map<std::size_t, Rational>> ForcedZeroSolver::span_combination(const TraceExpr& expr) const {
  const int constant_col = free_columns_ + static_cast<int>(equations_.nonnegative.size());
  Row row;
  for (const auto& [w, c] : expr.re) {
    auto it = real_column_.find(w);
    if (it == real_column_.end()) return std::nullopt;
    row.coeffs[it->second] = c;
  }
  for (const auto& [w, c] : expr.im) {
    auto it = imag_column_.find(w);
    if (it == imag_column_.end()) return std::nullopt;
    row.coeffs[it->second] = c;
  }
  if (expr.constant != 0) row.coeffs[constant_col] = expr.constant;
  reduce(row, false);
  if (!row.coeffs.empty()) return std::nullopt;
  std::map<std::size_t, Rational> out;
  for (const auto& [e, v] : row.combination) out[e] = -v;
  return out;
}

std::optional<Certificate> forced_zero(const TraceEquationSet& equations, const Word& target) {
  return ForcedZeroSolver(equations).forced_zero(target);
}

bool reverify(const ForcedGenerator& fg, std::string* why) {
  TraceEquationSet set;
  set.equations = fg.cited;
  std::set<Word> nonneg;
  for (const auto& eq : fg.cited) {
    for (const auto& [w, c] : eq.expr.re) {
      if (w.size() == 2 && w == nonnegative_symbol(w[0])) nonneg.insert(w);
    }
  }
  set.nonnegative.assign(nonneg.begin(), nonneg.end());
  Certificate cert = fg.certificate;
  if (cert.terms.size() != fg.cited.size()) {
    if (why) *why = "certificate and cited equations differ in length";
    return false;
  }
  for (std::size_t i = 0; i < cert.terms.size(); ++i) cert.terms[i].first = i;
  if (cert.target != nonnegative_symbol(fg.generator)) {
    if (why) *why = "certificate target is not the symbol of the generator";
    return false;
  }
  return verify_certificate(set, cert, why);
}

// ---------------------------------------------------------------------------
// Fixpoint

std::pair<KacReport, Presentation> kac_fixpoint(const Presentation& p, int degree) {
  for (const auto& factor : p.factors) {
    if (factor.f && !p.reality_reduced && !factor.f->is_monomial()) {
      fail(ErrorKind::InvalidArgument,
           "kac_fixpoint: F is not monomial; the (H) relations cannot be eliminated and the derivation is refused");
    }
  }
  Presentation current = canonicalize(reduce_reality(p));
  KacReport report;
  for (;;) {
    ++report.rounds;
    const TraceEquationSet equations = derive_trace_equations(current, degree);
    const ForcedZeroSolver solver(equations);
    std::vector<GeneratorId> newly_forced;
    report.undetermined.clear();
    for (const auto& g : current.generators) {
      std::optional<Certificate> cert;
      try {
        cert = solver.forced_zero(nonnegative_symbol(g));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Undetermined) throw;
        report.undetermined.push_back(g);
        continue;
      }
      if (!cert) continue;
      ForcedGenerator fg;
      fg.generator = g;
      fg.round = report.rounds;
      for (const auto& [idx, mult] : cert->terms) fg.cited.push_back(equations.equations[idx]);
      fg.certificate = std::move(*cert);
      report.certificates.push_back(std::move(fg));
      newly_forced.push_back(g);
    }
    if (newly_forced.empty()) break;
    report.forced.insert(report.forced.end(), newly_forced.begin(), newly_forced.end());
    current = canonicalize(quotient_by_zero(current, newly_forced));
  }
  std::sort(report.forced.begin(), report.forced.end());
  return {std::move(report), std::move(current)};
}

}  // namespace cqg
