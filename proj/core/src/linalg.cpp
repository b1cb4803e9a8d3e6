#include "klorentz/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "klorentz/errors.hpp"

namespace klorentz {

namespace {

constexpr int kMaxSweeps = 100;

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& q) {
  if (q.rows() != q.cols()) throw DimensionError("spectral: matrix must be square");
  if (!q.allFinite()) throw std::domain_error("spectral: non-finite matrix entry");
  const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
  const double asym = (q - q.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) throw PreconditionError("spectral: matrix is not symmetric");
  return 0.5 * (q + q.transpose());
}

}  // namespace

SpectralDecomp spectral(const Eigen::MatrixXd& q_in) {
  Eigen::MatrixXd a = symmetrized(q_in);
  const Eigen::Index n = a.rows();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  const double frob = a.norm();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index r = p + 1; r < n; ++r) off += a(p, r) * a(p, r);
    }
    if (std::sqrt(off) <= 1e-300 || std::sqrt(off) <= 1e-17 * frob) break;

    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index r = p + 1; r < n; ++r) {
        const double apr = a(p, r);
        if (apr == 0.0) continue;
        // Rotation angle annihilating a(p, r) (Rutishauser's formulation).
        const double theta = (a(r, r) - a(p, p)) / (2.0 * apr);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akr = a(k, r);
          a(k, p) = c * akp - s * akr;
          a(k, r) = s * akp + c * akr;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double ark = a(r, k);
          a(p, k) = c * apk - s * ark;
          a(r, k) = s * apk + c * ark;
        }
        a(p, r) = 0.0;
        a(r, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkr = v(k, r);
          v(k, p) = c * vkp - s * vkr;
          v(k, r) = s * vkp + c * vkr;
        }
      }
    }
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i) > a(j, j); });

  SpectralDecomp out{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues[k] = a(src, src);
    Eigen::VectorXd col = v.col(src);
    // Sign convention: largest-magnitude component positive.
    Eigen::Index imax = 0;
    col.cwiseAbs().maxCoeff(&imax);
    if (col[imax] < 0) col = -col;
    out.eigenvectors.col(k) = col;
  }
  return out;
}

double spectral_norm(const Eigen::MatrixXd& q) {
  if (q.size() == 0) return 0.0;
  return spectral(q).eigenvalues.cwiseAbs().maxCoeff();
}

Inertia inertia(const SpectralDecomp& s, const TolerancePolicy& tol) {
  const double norm = s.eigenvalues.size() == 0 ? 0.0 : s.eigenvalues.cwiseAbs().maxCoeff();
  Inertia in;
  in.tau = tol.tau(norm);
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double lam = s.eigenvalues[i];
    if (lam > in.tau) {
      ++in.n_pos;
    } else if (lam < -in.tau) {
      ++in.n_neg;
    } else {
      ++in.n_zero;
    }
    if (tol.fragile(std::abs(lam), in.tau)) in.fragile = true;
  }
  return in;
}

Inertia inertia(const Eigen::MatrixXd& q, const TolerancePolicy& tol) {
  return inertia(spectral(q), tol);
}

namespace {

Verdict max_eigenvalue_test(const Eigen::MatrixXd& m, bool strict, const TolerancePolicy& tol,
                            const std::string& method, double scale_hint) {
  if (m.rows() == 0) return Verdict::holds(method);
  const SpectralDecomp s = spectral(m);
  const double lam_max = s.eigenvalues[0];
  const double tau = tol.tau(std::max(scale_hint, s.eigenvalues.cwiseAbs().maxCoeff()));
  // Non-strict: lam_max <= tau. Strict: lam_max < -tau.
  const Status st = strict ? above_zero(-lam_max, tau, tol) : at_least_zero(-lam_max, tau, tol);
  if (st == Status::Holds) return Verdict::holds(method);
  if (st == Status::Inconclusive) {
    return Verdict::inconclusive(method, "largest eigenvalue " + std::to_string(lam_max) +
                                             " inside fragility band");
  }
  Witness w{"eigenvector", {s.eigenvectors.col(0)}, {lam_max}, "largest eigenvalue of the tested matrix"};
  return Verdict::fails(method, std::move(w));
}

}  // namespace

Verdict rank1_update_nsd(const Eigen::MatrixXd& q, const Eigen::VectorXd& a, double t,
                         const TolerancePolicy& tol) {
  if (q.rows() != q.cols() || q.rows() != a.size()) throw DimensionError("rank1_update_nsd: dimension mismatch");
  if (t < 1.0) throw PreconditionError("rank1_update_nsd: t must be >= 1");
  const Eigen::VectorXd qa = q * a;
  const double aqa = a.dot(qa);
  const double scale = std::max(1.0, q.cwiseAbs().maxCoeff()) * a.squaredNorm();
  if (aqa <= tol.tau(scale)) throw PreconditionError("rank1_update_nsd: a^T Q a must be positive");
  Eigen::MatrixXd m = aqa * q - t * qa * qa.transpose();
  m = 0.5 * (m + m.transpose());
  Verdict v = max_eigenvalue_test(m, false, tol, "rank1_update_nsd", aqa * spectral_norm(q));
  if (v.witness) v.witness->note = "eigenvector of (a^T Q a) Q - t (Qa)(Qa)^T with positive eigenvalue";
  return v;
}

Eigen::MatrixXd complement_basis(const Eigen::VectorXd& w) {
  const Eigen::Index n = w.size();
  const double norm = w.norm();
  // Householder H = I - 2 u u^T maps w to -sign(w_0) |w| e_0; columns 1..n-1 of H span w-perp.
  Eigen::VectorXd u = w / norm;
  u[0] += (u[0] >= 0 ? 1.0 : -1.0);
  u.normalize();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) - 2.0 * u * u.transpose();
  return h.rightCols(n - 1);
}

Verdict nsd_on_hyperplane(const Eigen::MatrixXd& q, const Eigen::VectorXd& w, bool strict,
                          const TolerancePolicy& tol) {
  if (q.rows() != q.cols() || q.rows() != w.size()) throw DimensionError("nsd_on_hyperplane: dimension mismatch");
  if (w.norm() <= 1e-12) throw PreconditionError("nsd_on_hyperplane: normal vector is zero");
  const std::string method = strict ? "nd_on_hyperplane" : "nsd_on_hyperplane";
  if (q.rows() == 1) return Verdict::holds(method);
  const Eigen::MatrixXd basis = complement_basis(w);
  Eigen::MatrixXd restricted = basis.transpose() * q * basis;
  restricted = 0.5 * (restricted + restricted.transpose());
  Verdict v = max_eigenvalue_test(restricted, strict, tol, method, spectral_norm(q));
  if (v.witness) {
    v.witness->vectors[0] = basis * v.witness->vectors[0];
    v.witness->note = "direction in the hyperplane where Q is not negative";
  }
  return v;
}

}  // namespace klorentz
