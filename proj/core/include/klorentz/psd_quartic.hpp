#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include <Eigen/Dense>

#include "klorentz/polynomial.hpp"
#include "klorentz/rational.hpp"
#include "klorentz/tolerance.hpp"
#include "klorentz/verdict.hpp"

namespace klorentz {

/// Quadratic form on symmetric n x n matrices, written in the PSD cone
/// coordinates (diagonal entries first, then X_ij for i < j). q(X) = x^T Q x
/// with x = svec(X).
struct SymQuadratic {
  std::size_t n = 0;
  RatMatrix q;

  SymQuadratic() = default;
  SymQuadratic(std::size_t side, RatMatrix matrix);

  std::size_t dim() const { return q.rows(); }
  Rational evaluate(const RatVector& x) const;
  double evaluate(const Eigen::MatrixXd& x) const;

  friend bool operator==(const SymQuadratic& a, const SymQuadratic& b) { return a.n == b.n && a.q == b.q; }
};

/// Form of bidegree (2, 2) in (x, y); the polynomial has 2n variables with x first.
struct Biquadratic {
  std::size_t n = 0;
  Polynomial poly;

  /// The quartic obtained by setting y = x.
  Polynomial diagonal() const;
  bool swap_symmetric() const;
};

/// q(x x^T): substitutes X_ij = x_i x_j.
Polynomial phi(const SymQuadratic& q);
/// <y y^T, L(x x^T)> = sum Q_ab (y y^T)_a (x x^T)_b.
Biquadratic psi(const SymQuadratic& q);

/// Spreads each quartic coefficient evenly over the quadratic monomials
/// X_a X_b mapping onto it. Requires degree 4 (PreconditionError).
SymQuadratic canonical_preimage(const Polynomial& p);

/// Sum of the 2 x 2 principal minors, sum_{i<j} X_ii X_jj - X_ij^2. Requires n >= 2.
SymQuadratic r_form(std::size_t n);

/// m + t r_form(n) with t >= 2 ||M||_2 + 1, rounded up to a multiple of 1/64.
/// The result is nonsingular with exactly one positive eigenvalue and has the
/// same image under phi.
std::pair<SymQuadratic, Rational> lorentzian_shift(const SymQuadratic& m);

struct QuarticPlan {
  std::size_t budget = 4000;
  std::uint64_t seed = 42;
  TolerancePolicy tol{};
};

/// p >= 0 on R^n. Exact for n <= 2 (Sturm sequences on p(t, 1)); for n >= 3 a
/// sampling falsifier whose Holds is sampling-supported and whose witnesses are
/// confirmed in exact arithmetic.
Verdict quartic_nonneg_oracle(const Polynomial& p, const QuarticPlan& plan = {});

/// Requires inertia (1, N-1, 0) (HypothesisError); then decides PSD(n)-Lorentzian
/// membership through nonnegativity of phi(q).
Verdict psd_lorentzian_via_quartic(const SymQuadratic& q, const QuarticPlan& plan = {});

}  // namespace klorentz
