#include "klorentz/psd_quartic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "klorentz/cone.hpp"
#include "klorentz/errors.hpp"
#include "klorentz/linalg.hpp"
#include "klorentz/univariate.hpp"

namespace klorentz {

namespace {

// (i, j) with i <= j for every coordinate, in coordinate order.
std::vector<std::pair<std::size_t, std::size_t>> coordinates(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out(psd_dim(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) out[psd_index(n, i, j)] = {i, j};
  }
  return out;
}

void bump(std::vector<unsigned>& e, std::size_t offset, std::pair<std::size_t, std::size_t> c) {
  ++e[offset + c.first];
  ++e[offset + c.second];
}

}  // namespace

SymQuadratic::SymQuadratic(std::size_t side, RatMatrix matrix) : n(side), q(std::move(matrix)) {
  if (q.rows() != psd_dim(side) || q.cols() != psd_dim(side)) {
    throw DimensionError("SymQuadratic: matrix must be " + std::to_string(psd_dim(side)) + " x " +
                         std::to_string(psd_dim(side)));
  }
  if (!q.is_symmetric()) throw PreconditionError("SymQuadratic: matrix must be symmetric");
}

Rational SymQuadratic::evaluate(const RatVector& x) const { return dot(x, q * x); }

double SymQuadratic::evaluate(const Eigen::MatrixXd& x) const {
  if (static_cast<std::size_t>(x.rows()) != n) throw DimensionError("SymQuadratic::evaluate: wrong matrix side");
  const Eigen::VectorXd v = svec(x);
  return v.dot(q.to_double() * v);
}

Polynomial Biquadratic::diagonal() const {
  Polynomial out(n, 4);
  for (const auto& [m, c] : poly.terms()) {
    std::vector<unsigned> e(n, 0);
    for (std::size_t i = 0; i < n; ++i) e[i] = m[i] + m[n + i];
    out.add_term(Monomial(std::move(e)), c);
  }
  return out;
}

bool Biquadratic::swap_symmetric() const {
  for (const auto& [m, c] : poly.terms()) {
    std::vector<unsigned> e(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = m[n + i];
      e[n + i] = m[i];
    }
    if (poly.coefficient(Monomial(std::move(e))) != c) return false;
  }
  return true;
}

Polynomial phi(const SymQuadratic& q) {
  const auto coords = coordinates(q.n);
  Polynomial out(q.n, 4);
  for (std::size_t a = 0; a < coords.size(); ++a) {
    for (std::size_t b = 0; b < coords.size(); ++b) {
      const Rational& c = q.q(a, b);
      if (c == 0) continue;
      std::vector<unsigned> e(q.n, 0);
      bump(e, 0, coords[a]);
      bump(e, 0, coords[b]);
      out.add_term(Monomial(std::move(e)), c);
    }
  }
  return out;
}

Biquadratic psi(const SymQuadratic& q) {
  const auto coords = coordinates(q.n);
  Biquadratic out{q.n, Polynomial(2 * q.n, 4)};
  for (std::size_t a = 0; a < coords.size(); ++a) {
    for (std::size_t b = 0; b < coords.size(); ++b) {
      const Rational& c = q.q(a, b);
      if (c == 0) continue;
      std::vector<unsigned> e(2 * q.n, 0);
      bump(e, q.n, coords[a]);  // (y y^T)_a
      bump(e, 0, coords[b]);    // (x x^T)_b
      out.poly.add_term(Monomial(std::move(e)), c);
    }
  }
  return out;
}

SymQuadratic canonical_preimage(const Polynomial& p) {
  if (p.degree() != 4) throw PreconditionError("canonical_preimage: degree must be 4, got " + std::to_string(p.degree()));
  const std::size_t n = p.num_vars();
  const auto coords = coordinates(n);
  std::map<Monomial, std::vector<std::pair<std::size_t, std::size_t>>> fibers;
  for (std::size_t a = 0; a < coords.size(); ++a) {
    for (std::size_t b = a; b < coords.size(); ++b) {
      std::vector<unsigned> e(n, 0);
      bump(e, 0, coords[a]);
      bump(e, 0, coords[b]);
      fibers[Monomial(std::move(e))].emplace_back(a, b);
    }
  }
  RatMatrix q(coords.size(), coords.size());
  for (const auto& [m, c] : p.terms()) {
    const auto& fiber = fibers.at(m);
    const Rational share = c / Rational(static_cast<long>(fiber.size()));
    for (const auto& [a, b] : fiber) {
      if (a == b) {
        q(a, a) += share;
      } else {
        const Rational half = share / 2;
        q(a, b) += half;
        q(b, a) += half;
      }
    }
  }
  return SymQuadratic(n, std::move(q));
}

SymQuadratic r_form(std::size_t n) {
  if (n < 2) throw PreconditionError("r_form: n must be at least 2");
  RatMatrix q(psd_dim(n), psd_dim(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q(i, j) = Rational(1, 2);
      q(j, i) = Rational(1, 2);
      const std::size_t off = psd_index(n, i, j);
      q(off, off) = -1;
    }
  }
  return SymQuadratic(n, std::move(q));
}

std::pair<SymQuadratic, Rational> lorentzian_shift(const SymQuadratic& m) {
  const SymQuadratic r = r_form(m.n);
  const Eigen::MatrixXd md = m.q.to_double();
  double norm = m.dim() > 100 ? md.norm() : spectral_norm(md);
  // Guard against rounding in the computed norm.
  norm += 1e-12 * norm;
  const double scaled = 64.0 * (2.0 * norm + 1.0);
  const Rational t(mpz_class(static_cast<unsigned long>(std::ceil(scaled))), mpz_class(64));
  Rational tc = t;
  tc.canonicalize();
  SymQuadratic out(m.n, m.q + tc * r.q);
  return {std::move(out), tc};
}

// ---------------------------------------------------------------------------

namespace {

Verdict nonneg_two_vars(const Polynomial& p) {
  const std::string method = "quartic_exact";
  // g(t) = p(t, 1); the coefficient of t^k is that of x1^k x2^(4-k).
  RatVector c(5, Rational(0));
  for (const auto& [m, coef] : p.terms()) c[m[0]] = coef;
  if (c[4] < 0) {
    return Verdict::fails(method, Witness{"point", {Eigen::Vector2d(1.0, 0.0)}, {c[4].get_d()}, "p(1, 0) < 0"});
  }
  const UPoly g(c);
  if (g.is_zero()) return Verdict::holds(method, false, "zero quartic");
  // g has constant sign between consecutive real roots; every gap contains an
  // endpoint of an isolating interval.
  std::vector<Rational> probes;
  const auto intervals = isolate_real_roots(squarefree_part(g));
  for (const auto& [a, b] : intervals) {
    probes.push_back(a);
    probes.push_back(b);
  }
  if (probes.empty()) probes.push_back(0);
  for (const Rational& t : probes) {
    const Rational v = g(t);
    if (v < 0) {
      return Verdict::fails(method,
                            Witness{"point", {Eigen::Vector2d(t.get_d(), 1.0)}, {v.get_d()}, "p(t, 1) < 0 at t = " + to_string(t)});
    }
  }
  return Verdict::holds(method, false, std::to_string(intervals.size()) + " distinct real roots of p(t, 1)");
}

double sphere_value(const PolynomialD& p, const Eigen::VectorXd& x) {
  const double n2 = x.squaredNorm();
  return p.evaluate(x) / (n2 * n2);
}

Verdict nonneg_sampled(const Polynomial& p, const QuarticPlan& plan) {
  const std::string method = "quartic_sampled";
  const std::size_t n = p.num_vars();
  const PolynomialD pd = p.cast<double>();
  Rng rng(plan.seed);
  std::vector<std::pair<double, Eigen::VectorXd>> pool;
  pool.reserve(plan.budget);
  for (std::size_t s = 0; s < plan.budget; ++s) {
    Eigen::VectorXd x = sample_unit_sphere(n, rng);
    pool.emplace_back(sphere_value(pd, x), std::move(x));
  }
  const std::size_t keep = std::min<std::size_t>(8, pool.size());
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(keep), pool.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });

  double best = INFINITY;
  Eigen::VectorXd best_x;
  for (std::size_t s = 0; s < keep; ++s) {
    Eigen::VectorXd x = pool[s].second;
    double v = pool[s].first;
    // Coordinate pattern search with shrinking steps.
    for (double h = 0.25; h > 1e-9;) {
      bool moved = false;
      for (std::size_t i = 0; i < n; ++i) {
        for (double dir : {1.0, -1.0}) {
          Eigen::VectorXd y = x;
          y[static_cast<Eigen::Index>(i)] += dir * h;
          y.normalize();
          const double vy = sphere_value(pd, y);
          if (vy < v) {
            x = std::move(y);
            v = vy;
            moved = true;
          }
        }
      }
      if (!moved) h *= 0.5;
    }
    if (v < best) {
      best = v;
      best_x = x;
    }
  }
  const double tau = plan.tol.tau(p.coefficient_l1());
  const Status st = at_least_zero(best, tau, plan.tol);
  if (st == Status::Holds) return Verdict::holds(method, true, "minimum on the sphere " + std::to_string(best));
  if (st == Status::Inconclusive) return Verdict::inconclusive(method, "sphere minimum inside fragility band", true);
  // Confirm the witness exactly.
  const RatVector xr = to_rational(best_x);
  const Rational exact = p.evaluate(xr);
  if (!(exact < 0)) return Verdict::inconclusive(method, "negative sample not confirmed exactly", true);
  return Verdict::fails(method, Witness{"point", {best_x}, {best}, "p(x) / |x|^4 < 0"}, true);
}

}  // namespace

Verdict quartic_nonneg_oracle(const Polynomial& p, const QuarticPlan& plan) {
  if (p.degree() != 4) throw PreconditionError("quartic_nonneg_oracle: degree must be 4, got " + std::to_string(p.degree()));
  const std::size_t n = p.num_vars();
  if (p.is_zero()) return Verdict::holds("quartic_exact", false, "zero quartic");
  if (n == 1) {
    const Rational c = p.coefficient(Monomial::variable(1, 0, 4));
    if (c >= 0) return Verdict::holds("quartic_exact");
    return Verdict::fails("quartic_exact", Witness{"point", {Eigen::VectorXd::Ones(1)}, {c.get_d()}, "p(1) < 0"});
  }
  if (n == 2) return nonneg_two_vars(p);
  return nonneg_sampled(p, plan);
}

Verdict psd_lorentzian_via_quartic(const SymQuadratic& q, const QuarticPlan& plan) {
  const std::string method = "via_quartic";
  const Inertia in = inertia(q.q.to_double(), plan.tol);
  if (in.fragile) return Verdict::inconclusive(method, "inertia is fragile");
  const auto big_n = static_cast<int>(q.dim());
  if (in.n_pos != 1 || in.n_neg != big_n - 1 || in.n_zero != 0) {
    throw HypothesisError("psd_lorentzian_via_quartic: inertia must be (1, " + std::to_string(big_n - 1) +
                          ", 0), got (" + std::to_string(in.n_pos) + ", " + std::to_string(in.n_neg) + ", " +
                          std::to_string(in.n_zero) + ")");
  }
  Verdict v = quartic_nonneg_oracle(phi(q), plan);
  v.method = method + "/" + v.method;
  return v;
}

}  // namespace klorentz
