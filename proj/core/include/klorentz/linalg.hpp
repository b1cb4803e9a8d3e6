#pragma once

#include <Eigen/Dense>

#include "klorentz/tolerance.hpp"
#include "klorentz/verdict.hpp"

namespace klorentz {

/// Eigenvalues sorted descending; eigenvectors are the matching orthonormal columns.
struct SpectralDecomp {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// The input is symmetrized by averaging; asymmetry beyond 1e-10 relative is
/// rejected as a PreconditionError, non-finite entries as std::domain_error.
/// Deterministic for a fixed input.
SpectralDecomp spectral(const Eigen::MatrixXd& q);

/// Largest absolute eigenvalue of a symmetric matrix.
double spectral_norm(const Eigen::MatrixXd& q);

struct Inertia {
  int n_pos = 0;
  int n_neg = 0;
  int n_zero = 0;
  /// Some eigenvalue sits inside the fragility band around +-tau.
  bool fragile = false;
  double tau = 0.0;

  bool exactly_one_positive() const { return n_pos == 1; }
  bool nonsingular() const { return n_zero == 0; }
  friend bool operator==(const Inertia& a, const Inertia& b) {
    return a.n_pos == b.n_pos && a.n_neg == b.n_neg && a.n_zero == b.n_zero;
  }
};

/// Counts eigenvalues above tau, below -tau and inside [-tau, tau] with
/// tau = tol.tau(||Q||_2).
Inertia inertia(const Eigen::MatrixXd& q, const TolerancePolicy& tol = {});
Inertia inertia(const SpectralDecomp& s, const TolerancePolicy& tol = {});

/// Tests (a^T Q a) Q - t (Qa)(Qa)^T <= 0. Requires a^T Q a > 0 and t >= 1.
Verdict rank1_update_nsd(const Eigen::MatrixXd& q, const Eigen::VectorXd& a, double t = 1.0,
                         const TolerancePolicy& tol = {});

/// Tests that Q restricted to the hyperplane w-perp is negative semidefinite
/// (strict: negative definite). Throws PreconditionError for w ~ 0.
Verdict nsd_on_hyperplane(const Eigen::MatrixXd& q, const Eigen::VectorXd& w, bool strict = false,
                          const TolerancePolicy& tol = {});

/// Orthonormal basis (as columns) of the orthogonal complement of w, built from a
/// Householder reflection.
Eigen::MatrixXd complement_basis(const Eigen::VectorXd& w);

}  // namespace klorentz
