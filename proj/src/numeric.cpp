// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

#include "cqg/numeric.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "cqg/error.hpp"

namespace cqg {

namespace {

using Complex = std::complex<double>;

CMatrix to_complex(const ScalarMatrix& s) {
  CMatrix m(static_cast<Eigen::Index>(s.rows()), static_cast<Eigen::Index>(s.cols()));
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) m(Eigen::Index(i), Eigen::Index(j)) = s.at(i, j).get_d();
  return m;
}

const CMatrix& value_of(const NumAssignment& pi, const GeneratorId& g) {
  auto it = pi.values.find(g.plain());
  if (it == pi.values.end()) fail(ErrorKind::InvalidArgument, "no matrix assigned to " + to_string(g.plain()));
  return it->second;
}

std::string defect_message(const std::string& what, double defect) {
  std::ostringstream os;
  os << what << " (defect " << defect << ")";
  return os.str();
}

// Flat real parametrization: for every generator, the real parts then the
// imaginary parts of its entries in column-major order.
class Parametrization {
 public:
  Parametrization(const Presentation& p, int n) : gens_(p.generators), n_(n) {}

  Eigen::Index size() const { return Eigen::Index(gens_.size()) * 2 * n_ * n_; }

  NumAssignment unpack(const Eigen::VectorXd& theta) const {
    NumAssignment pi;
    pi.dim = n_;
    const Eigen::Index block = Eigen::Index(n_) * n_;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      CMatrix m(n_, n_);
      const Eigen::Index base = Eigen::Index(g) * 2 * block;
      for (Eigen::Index e = 0; e < block; ++e) m(e % n_, e / n_) = Complex(theta[base + e], theta[base + block + e]);
      pi.values[gens_[g]] = m;
    }
    return pi;
  }

  Eigen::VectorXd pack(const NumAssignment& pi) const {
    Eigen::VectorXd theta(size());
    const Eigen::Index block = Eigen::Index(n_) * n_;
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      const CMatrix& m = pi.values.at(gens_[g]);
      const Eigen::Index base = Eigen::Index(g) * 2 * block;
      for (Eigen::Index e = 0; e < block; ++e) {
        theta[base + e] = m(e % n_, e / n_).real();
        theta[base + block + e] = m(e % n_, e / n_).imag();
      }
    }
    return theta;
  }

  // Direction in which parameter `k` moves the assignment.
  std::pair<GeneratorId, CMatrix> direction(Eigen::Index k) const {
    const Eigen::Index block = Eigen::Index(n_) * n_;
    const auto g = static_cast<std::size_t>(k / (2 * block));
    const Eigen::Index within = k % (2 * block);
    const bool imag = within >= block;
    const Eigen::Index e = within % block;
    CMatrix d = CMatrix::Zero(n_, n_);
    d(e % n_, e / n_) = imag ? Complex(0, 1) : Complex(1, 0);
    return {gens_[g], d};
  }

 private:
  std::vector<GeneratorId> gens_;
  int n_;
};

struct CompiledTerm {
  Complex coeff;
  std::vector<std::pair<std::size_t, bool>> letters;  // (generator index, star)
};

// Relations with words resolved to generator indices, for fast repeated
// evaluation of residuals and derivatives.
class CompiledRelations {
 public:
  CompiledRelations(const Presentation& p, int n) : n_(n) {
    std::map<GeneratorId, std::size_t> index;
    for (std::size_t i = 0; i < p.generators.size(); ++i) index[p.generators[i]] = i;
    gens_ = p.generators.size();
    for (const auto& rel : p.relations) {
      std::vector<CompiledTerm> terms;
      for (const auto& [w, c] : rel.expr.terms()) {
        CompiledTerm t{Complex(c.get_d(), 0), {}};
        for (const auto& g : w) {
          auto it = index.find(g.plain());
          if (it == index.end()) fail(ErrorKind::InvalidArgument, "relation uses unknown generator " + to_string(g));
          t.letters.emplace_back(it->second, g.star);
        }
        terms.push_back(std::move(t));
      }
      rels_.push_back(std::move(terms));
    }
  }

  Eigen::Index residual_size() const { return Eigen::Index(rels_.size()) * 2 * n_ * n_; }

  // Residual vector and Jacobian with respect to the flat parameters.
  void evaluate(const std::vector<CMatrix>& x, Eigen::VectorXd& r, Eigen::MatrixXd& jac) const {
    const Eigen::Index block = Eigen::Index(n_) * n_;
    const Eigen::Index params = Eigen::Index(gens_) * 2 * block;
    r.setZero(residual_size());
    jac.setZero(residual_size(), params);
    std::vector<CMatrix> xs(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xs[i] = x[i].adjoint();
    const CMatrix id = CMatrix::Identity(n_, n_);

    for (std::size_t ri = 0; ri < rels_.size(); ++ri) {
      const Eigen::Index row0 = Eigen::Index(ri) * 2 * block;
      CMatrix value = CMatrix::Zero(n_, n_);
      // dvalue/dtheta for each parameter, stored as n x n matrices.
      std::vector<CMatrix> grad(static_cast<std::size_t>(params), CMatrix::Zero(n_, n_));
      for (const auto& term : rels_[ri]) {
        const std::size_t len = term.letters.size();
        std::vector<CMatrix> prefix(len + 1, id), suffix(len + 1, id);
        for (std::size_t i = 0; i < len; ++i) {
          const auto [g, star] = term.letters[i];
          prefix[i + 1] = prefix[i] * (star ? xs[g] : x[g]);
        }
        for (std::size_t i = len; i-- > 0;) {
          const auto [g, star] = term.letters[i];
          suffix[i] = (star ? xs[g] : x[g]) * suffix[i + 1];
        }
        value += term.coeff * prefix[len];
        for (std::size_t i = 0; i < len; ++i) {
          const auto [g, star] = term.letters[i];
          const Eigen::Index base = Eigen::Index(g) * 2 * block;
          for (Eigen::Index e = 0; e < block; ++e) {
            const Eigen::Index a = e % n_;
            const Eigen::Index b = e / n_;
            // d/d re and d/d im of entry (a,b); the adjoint letter sees the
            // conjugate-transposed unit, with the imaginary direction negated.
            const Eigen::Index sa = star ? b : a;
            const Eigen::Index sb = star ? a : b;
            const CMatrix outer = prefix[i].col(sa) * suffix[i + 1].row(sb);
            grad[static_cast<std::size_t>(base + e)] += term.coeff * outer;
            grad[static_cast<std::size_t>(base + block + e)] += term.coeff * (star ? Complex(0, -1) : Complex(0, 1)) * outer;
          }
        }
      }
      for (Eigen::Index e = 0; e < block; ++e) {
        r[row0 + e] = value(e % n_, e / n_).real();
        r[row0 + block + e] = value(e % n_, e / n_).imag();
      }
      for (Eigen::Index k = 0; k < params; ++k) {
        const CMatrix& gk = grad[static_cast<std::size_t>(k)];
        for (Eigen::Index e = 0; e < block; ++e) {
          jac(row0 + e, k) = gk(e % n_, e / n_).real();
          jac(row0 + block + e, k) = gk(e % n_, e / n_).imag();
        }
      }
    }
  }

  double cost(const std::vector<CMatrix>& x) const {
    Eigen::VectorXd r;
    Eigen::MatrixXd jac;
    evaluate(x, r, jac);
    return r.squaredNorm();
  }

 private:
  int n_;
  std::size_t gens_ = 0;
  std::vector<std::vector<CompiledTerm>> rels_;
};

std::vector<CMatrix> as_list(const Presentation& p, const NumAssignment& pi) {
  std::vector<CMatrix> out;
  for (const auto& g : p.generators) out.push_back(pi.values.at(g));
  return out;
}

}  // namespace

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const double s = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  if (std::isfinite(s)) return s;
  // Power iteration on m* m.
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(m.cols()).normalized();
  double lambda = 0;
  for (int it = 0; it < 500; ++it) {
    Eigen::VectorXcd w = m.adjoint() * (m * v);
    const double nw = w.norm();
    if (nw == 0) return 0;
    v = w / nw;
    lambda = nw;
  }
  return std::sqrt(lambda);
}

CMatrix evaluate(const AlgElement& a, const NumAssignment& pi) {
  const CMatrix id = CMatrix::Identity(pi.dim, pi.dim);
  CMatrix out = CMatrix::Zero(pi.dim, pi.dim);
  for (const auto& [w, c] : a.terms()) {
    CMatrix prod = id;
    for (const auto& g : w) {
      const CMatrix& x = value_of(pi, g);
      if (x.rows() != pi.dim || x.cols() != pi.dim) {
        fail(ErrorKind::Shape, "matrix for " + to_string(g.plain()) + " is not " + std::to_string(pi.dim) + "x" +
                                   std::to_string(pi.dim));
      }
      prod = g.star ? CMatrix(prod * x.adjoint()) : CMatrix(prod * x);
    }
    out += c.get_d() * prod;
  }
  return out;
}

ResidualReport eval_residual(const Presentation& p, const NumAssignment& pi, double tolerance) {
  if (pi.dim < 1) fail(ErrorKind::InvalidArgument, "eval_residual: dimension must be positive");
  for (const auto& g : p.generators) value_of(pi, g);
  ResidualReport report;
  report.tolerance = tolerance;
  for (const auto& rel : p.relations) {
    const double r = operator_norm(evaluate(rel.expr, pi));
    report.residuals.push_back(r);
    report.max = std::max(report.max, r);
  }
  return report;
}

NumAssignment classical_point(const Presentation& p, const CMatrix& v, double tolerance) {
  const auto n = static_cast<Eigen::Index>(p.dimension());
  if (v.rows() != n || v.cols() != n) {
    fail(ErrorKind::Shape, "classical_point: V must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  for (const auto& f : p.factors) {
    const auto off = static_cast<Eigen::Index>(f.offset);
    const auto sz = static_cast<Eigen::Index>(f.size);
    const CMatrix b = v.block(off, off, sz, sz);
    const CMatrix id = CMatrix::Identity(sz, sz);
    const std::string where = "factor " + std::to_string(f.tag) + ": ";
    const double unitary = std::max(operator_norm(b.adjoint() * b - id), operator_norm(b * b.adjoint() - id));
    if (unitary > tolerance) fail(ErrorKind::InvalidArgument, defect_message(where + "V is not unitary", unitary));
    const CMatrix q = to_complex(f.q);
    const CMatrix w = q * b.conjugate() * q.inverse();
    const double twisted = std::max(operator_norm(w.adjoint() * w - id), operator_norm(w * w.adjoint() - id));
    if (twisted > tolerance) {
      fail(ErrorKind::InvalidArgument, defect_message(where + "Q conj(V) Q^-1 is not unitary", twisted));
    }
    if (f.f) {
      const CMatrix fm = to_complex(*f.f);
      const double real = operator_norm(b - fm * b.conjugate() * fm.inverse());
      if (real > tolerance) fail(ErrorKind::InvalidArgument, defect_message(where + "V differs from F conj(V) F^-1", real));
    }
  }
  NumAssignment pi;
  pi.dim = 1;
  for (const auto& g : p.generators) {
    const auto pos = p.position_of(g);
    if (!pos) fail(ErrorKind::InvalidArgument, "classical_point: " + to_string(g) + " is not a layout entry");
    CMatrix m(1, 1);
    m(0, 0) = v(Eigen::Index(pos->first), Eigen::Index(pos->second));
    pi.values[g] = m;
  }
  return pi;
}

CMatrix random_unitary(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  CMatrix z(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) z(i, j) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    const double ad = std::abs(d);
    if (ad > 0) q.col(i) *= d / ad;
  }
  return q;
}

std::optional<NumAssignment> rep_search(const Presentation& p, int n, std::uint64_t seed, const SearchOptions& opts) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "rep_search: dimension must be positive");
  const Parametrization param(p, n);
  const CompiledRelations rels(p, n);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  NumAssignment start;
  start.dim = n;
  const double scale = 1.0 / std::sqrt(2.0 * n);
  for (const auto& g : p.generators) {
    CMatrix m(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i) m(i, j) = Complex(normal(rng), normal(rng)) * scale;
    start.values[g] = m;
  }

  Eigen::VectorXd theta = param.pack(start);
  Eigen::VectorXd r;
  Eigen::MatrixXd jac;
  std::vector<CMatrix> x = as_list(p, param.unpack(theta));
  rels.evaluate(x, r, jac);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  const double target = opts.accept * opts.accept * 1e-4;

  for (int it = 0; it < opts.max_iterations && cost > target; ++it) {
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * r;
    bool improved = false;
    for (int attempt = 0; attempt < 30 && !improved; ++attempt) {
      Eigen::MatrixXd lhs = jtj;
      lhs.diagonal().array() += lambda * (1.0 + jtj.diagonal().array());
      const Eigen::VectorXd step = lhs.ldlt().solve(-jtr);
      const Eigen::VectorXd trial = theta + step;
      const std::vector<CMatrix> xt = as_list(p, param.unpack(trial));
      const double c = rels.cost(xt);
      if (std::isfinite(c) && c < cost) {
        theta = trial;
        x = xt;
        rels.evaluate(x, r, jac);
        cost = r.squaredNorm();
        lambda = std::max(lambda / 3.0, 1e-12);
        improved = true;
      } else {
        lambda *= 4.0;
      }
    }
    if (!improved) break;
  }

  NumAssignment out = param.unpack(theta);
  const ResidualReport check = eval_residual(p, out, opts.accept);
  if (check.max < opts.accept) return out;
  return std::nullopt;
}

SearchOutcome rep_search_restarts(const Presentation& p, int n, std::uint64_t seed, int restarts,
                                  const SearchOptions& opts) {
  SearchOutcome outcome;
  for (int i = 0; i < restarts; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    ++outcome.attempts;
    if (auto point = rep_search(p, n, s, opts)) {
      outcome.residual = eval_residual(p, *point, opts.accept).max;
      outcome.point = std::move(point);
      outcome.seed = s;
      return outcome;
    }
  }
  return outcome;
}

}  // namespace cqg
