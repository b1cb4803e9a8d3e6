#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "klorentz/cone.hpp"
#include "klorentz/linalg.hpp"
#include "klorentz/polynomial.hpp"
#include "klorentz/verdict.hpp"

namespace klorentz {

/// How the positivity condition is checked for a quadratic once the
/// one-positive-eigenvalue condition passed.
enum class PositivityPath {
  DualMap,            ///< Q x in K* for extreme rays x; exact for polyhedral cones
  ExtremePairs,       ///< y^T Q x >= 0 over pairs of extreme rays
  InteriorValues,     ///< x^T Q x > 0 at interior points
  DefinitionSampled,  ///< y^T Q x > 0 over pairs of interior points
};

enum class Method { DefinitionSampled, ExtremeReduction, ClcSampled, SocSLemma, OrthantExact };

std::string_view to_string(PositivityPath p);
std::string_view to_string(Method m);

struct CheckPlan {
  Method method = Method::DefinitionSampled;
  PositivityPath positivity = PositivityPath::DualMap;
  /// Outer sample count: tuples, points or ray parameters depending on the check.
  std::size_t samples = 2000;
  /// Per-quadratic search budget used inside degree-d checks.
  std::size_t inner_samples = 48;
  std::uint64_t seed = 42;
  TolerancePolicy tol{};
};

// ---------------------------------------------------------------------------
// Quadratics.

/// Signature gate plus the chosen positivity path. The zero form Holds.
Verdict quad_is_lorentzian(const QuadraticForm& q, const Cone& k, const CheckPlan& plan = {});
/// Floating-point variant used for derived quadratics; no exact shortcut.
Verdict quad_is_lorentzian(const Eigen::MatrixXd& q, const Cone& k, const CheckPlan& plan = {});

/// q(v) >= 0 on extreme rays. Requires Q nonsingular with exactly one positive
/// eigenvalue and a cone with path-connected extreme rays (HypothesisError).
Verdict quad_extreme_value_test(const QuadraticForm& q, const Cone& k, const CheckPlan& plan = {});

struct SocCertificate {
  Verdict verdict;
  /// Multiplier with lambda_min(Q - lambda B) >= -tau, if one was found.
  std::optional<double> lambda;
  double min_eigenvalue = 0.0;
};

/// S-lemma test on SOC(n), n = q.num_vars(), with B = diag(1, -1, ..., -1).
SocCertificate quad_soc_certificate(const QuadraticForm& q, const TolerancePolicy& tol = {});

// ---------------------------------------------------------------------------
// Log-concavity.

/// Signature of H_f(a), cross-checked with the rank-one update and hyperplane
/// criteria; disagreement is Inconclusive. Requires f(a) > tau.
Verdict is_log_concave_at(const Polynomial& f, const Eigen::VectorXd& a, bool strict = false,
                          const TolerancePolicy& tol = {});
Verdict is_log_concave_at(const PolynomialD& f, const Eigen::VectorXd& a, bool strict = false,
                          const TolerancePolicy& tol = {});

// ---------------------------------------------------------------------------
// Degree-d forms.

/// Definition check on sampled interior tuples (a_1, ..., a_{d-2}). Degree <= 1
/// forms are tested for nonnegativity on K directly.
Verdict is_lorentzian_sampled(const Polynomial& f, const Cone& k, const CheckPlan& plan = {});

/// Tests D_{v_1} ... D_{v_k} D_a^{d-2-k} f for all multisets of extreme rays,
/// k = 0..d-2. Exact on polyhedral cones; rays are sampled on SOC and PSD.
/// `a` defaults to interior_point_rational(k).
Verdict is_lorentzian_extreme_reduction(const Polynomial& f, const Cone& k,
                                        const std::optional<RatVector>& a = std::nullopt,
                                        const CheckPlan& plan = {});

/// Complete log-concavity on sampled directions from K and sampled points of int K.
Verdict is_clc_sampled(const Polynomial& f, const Cone& k, const CheckPlan& plan = {});

/// Strict version over tuples from the closed cone: nonsingular derived
/// quadratics with y^T Q x > 0 on K \ {0}.
Verdict in_interior_sl(const Polynomial& f, const Cone& k, const CheckPlan& plan = {});

/// If D_b f = D_c g is not identically zero, f + g is K-Lorentzian. Holds when the
/// identity is verified exactly; Inconclusive when it does not hold.
Verdict sum_is_lorentzian(const Polynomial& f, const Polynomial& g, const RatVector& b, const RatVector& c,
                          const Cone& k, const CheckPlan& plan = {});

/// Dispatches on plan.method (quadratic or degree-d as appropriate).
Verdict check_lorentzian(const Polynomial& f, const Cone& k, const CheckPlan& plan = {});

}  // namespace klorentz
