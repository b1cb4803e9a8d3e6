#pragma once

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "klorentz/rational.hpp"
#include "klorentz/tolerance.hpp"
#include "klorentz/verdict.hpp"

namespace klorentz {

using Rng = std::mt19937_64;

enum class ConeKind { Orthant, SecondOrder, PSD, Polyhedral };

std::string_view to_string(ConeKind k);

/// Proper convex cone in R^N.
///
/// PSD(n) lives in R^N with N = n(n+1)/2: the diagonal entries X_11..X_nn come
/// first, then the off-diagonal entries X_ij (i < j) in row-major order. The
/// off-diagonal coordinates hold the entry itself, so trace(XY) equals the
/// weighted product sum_k w_k x_k y_k with w = 1 on diagonal and 2 on
/// off-diagonal coordinates (see metric_weights).
class Cone {
 public:
  static Cone orthant(std::size_t n);
  static Cone second_order(std::size_t n);
  static Cone psd(std::size_t side);
  /// Both descriptions are required and verified against each other exactly:
  /// every generator pairs nonnegatively with every dual generator and each set
  /// spans R^n. Generators are taken to be the extreme rays.
  static Cone polyhedral(std::vector<RatVector> generators, std::vector<RatVector> dual_generators);

  ConeKind kind() const { return kind_; }
  /// Ambient dimension N.
  std::size_t dim() const { return dim_; }
  /// Matrix side for PSD, otherwise equal to dim().
  std::size_t side() const { return side_; }

  const std::vector<RatVector>& generators() const { return generators_; }
  const std::vector<RatVector>& dual_generators() const { return dual_generators_; }

  bool self_dual() const { return self_dual_; }
  bool extreme_rays_path_connected() const;
  bool has_finite_extreme_rays() const;

  /// Short form such as "orthant:4", "soc:3", "psd:2" or "polyhedral:3".
  std::string name() const;

 private:
  Cone() = default;

  ConeKind kind_ = ConeKind::Orthant;
  std::size_t dim_ = 0;
  std::size_t side_ = 0;
  std::vector<RatVector> generators_;
  std::vector<RatVector> dual_generators_;
  bool self_dual_ = true;
};

// ---------------------------------------------------------------------------
// Symmetric matrix coordinates.

std::size_t psd_dim(std::size_t side);
/// Coordinate index of entry (i, j) of an n x n symmetric matrix.
std::size_t psd_index(std::size_t side, std::size_t i, std::size_t j);
Eigen::VectorXd svec(const Eigen::MatrixXd& x);
Eigen::MatrixXd smat(const Eigen::VectorXd& x, std::size_t side);

/// Diagonal of the weight matrix W with <x, y>_K = x^T W y. All ones except
/// for the off-diagonal PSD coordinates.
Eigen::VectorXd metric_weights(const Cone& k);
RatVector metric_weights_rational(const Cone& k);

// ---------------------------------------------------------------------------
// Membership.

/// Normalized signed distance-like margin of x: nonnegative iff x is in K.
/// `tau` is the threshold the margin is compared against.
struct Margin {
  double value = 0.0;
  double tau = 0.0;
};
Margin membership_margin(const Cone& k, const Eigen::VectorXd& x, const TolerancePolicy& tol = {});

Verdict contains(const Cone& k, const Eigen::VectorXd& x, const TolerancePolicy& tol = {});
Verdict contains(const Cone& k, const Eigen::MatrixXd& x, const TolerancePolicy& tol = {});
/// Fixed-size vectors and expressions: column vectors go to the vector overload.
template <class Derived>
Verdict contains(const Cone& k, const Eigen::MatrixBase<Derived>& x, const TolerancePolicy& tol = {}) {
  if constexpr (Derived::ColsAtCompileTime == 1) {
    return contains(k, Eigen::VectorXd(x), tol);
  } else {
    return contains(k, Eigen::MatrixXd(x), tol);
  }
}
Verdict in_interior(const Cone& k, const Eigen::VectorXd& x, const TolerancePolicy& tol = {});
/// Membership in the dual cone with respect to the cone's own inner product
/// (trace product for PSD, Euclidean otherwise).
Verdict dual_contains(const Cone& k, const Eigen::VectorXd& y, const TolerancePolicy& tol = {});

Eigen::VectorXd interior_point(const Cone& k);
/// Exact interior point: the all-ones vector, e_1, svec(I), or the plain sum of
/// polyhedral generators.
RatVector interior_point_rational(const Cone& k);

// ---------------------------------------------------------------------------
// Extreme rays.

/// Orthant, Polyhedral, SOC(1), SOC(2) and PSD(1). Throws PreconditionError otherwise.
std::vector<RatVector> finite_extreme_rays(const Cone& k);

/// Dimension of the parameter vector u accepted by ray_from_parameter
/// (n - 1 for SOC(n), n for PSD(n)). Zero for finite cones.
std::size_t ray_parameter_dim(const Cone& k);

/// (1, u/|u|) for SOC and svec(v v^T) with v = u/|u| for PSD.
Eigen::VectorXd ray_from_parameter(const Cone& k, const Eigen::VectorXd& u);

Eigen::VectorXd sample_unit_sphere(std::size_t dim, Rng& rng);

/// Uniformly chosen finite ray, or a ray from a uniform sphere parameter.
Eigen::VectorXd sample_extreme_ray(const Cone& k, Rng& rng);

/// Every finite ray, or `budget` sampled ones.
std::vector<Eigen::VectorXd> extreme_rays(const Cone& k, std::size_t budget, Rng& rng);

}  // namespace klorentz
