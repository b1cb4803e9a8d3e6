#include <gtest/gtest.h>

#include <random>

#include <Eigen/Dense>

#include "klorentz/errors.hpp"
#include "klorentz/linalg.hpp"
#include "support/generators.hpp"

namespace klorentz {
namespace {

Eigen::MatrixXd random_symmetric(Rng& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  }
  return 0.5 * (a + a.transpose());
}

Eigen::MatrixXd random_orthogonal(Rng& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  }
  return Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
}

// Exactly one positive eigenvalue: diag(1, -1, ..., -1) scaled and rotated.
Eigen::MatrixXd random_hyperbolic(Rng& rng, int n) {
  std::uniform_real_distribution<double> u(0.2, 3.0);
  Eigen::VectorXd d(n);
  d[0] = u(rng);
  for (int i = 1; i < n; ++i) d[i] = -u(rng);
  const Eigen::MatrixXd o = random_orthogonal(rng, n);
  return o * d.asDiagonal() * o.transpose();
}

TEST(Spectral, SmallKnownSpectra) {
  EXPECT_TRUE(spectral(Eigen::Vector2d(1, -1).asDiagonal().toDenseMatrix()).eigenvalues.isApprox(Eigen::Vector2d(1, -1)));
  Eigen::Matrix2d swap;
  swap << 0, 1, 1, 0;
  EXPECT_TRUE(spectral(swap).eigenvalues.isApprox(Eigen::Vector2d(1, -1)));
  Eigen::Matrix3d half = Eigen::Matrix3d::Constant(0.5);
  half.diagonal().setZero();
  EXPECT_TRUE(spectral(half).eigenvalues.isApprox(Eigen::Vector3d(1, -0.5, -0.5)));
}

TEST(Spectral, AgreesWithEigenSolver) {
  Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    const int n = 1 + t % 12;
    const Eigen::MatrixXd q = random_symmetric(rng, n);
    const SpectralDecomp s = spectral(q);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> oracle(q);
    Eigen::VectorXd expect = oracle.eigenvalues().reverse();
    EXPECT_LT((s.eigenvalues - expect).cwiseAbs().maxCoeff(), 1e-12);
    const Eigen::MatrixXd v = s.eigenvectors;
    EXPECT_LT((q * v - v * s.eigenvalues.asDiagonal()).norm(), 1e-11);
    EXPECT_LT((v.transpose() * v - Eigen::MatrixXd::Identity(n, n)).norm(), 1e-12);
  }
}

TEST(Spectral, RejectsBadInput) {
  Eigen::Matrix2d a;
  a << 1, 2, 0, 1;
  EXPECT_THROW(spectral(a), PreconditionError);
  a << 1, NAN, NAN, 1;
  EXPECT_THROW(spectral(a), std::domain_error);
}

TEST(Inertia, Examples) {
  const Inertia a = inertia(Eigen::Vector3d(1, -1, 0).asDiagonal().toDenseMatrix());
  EXPECT_EQ(a, (Inertia{1, 1, 1}));
  Eigen::Matrix3d r = Eigen::Matrix3d::Zero();
  r(0, 1) = r(1, 0) = 0.5;
  r(2, 2) = -1;
  EXPECT_EQ(inertia(r), (Inertia{1, 2, 0}));
  Eigen::Matrix2d p;
  p << 1, -1, -1, 1;
  EXPECT_EQ(inertia(p), (Inertia{1, 0, 1}));
}

TEST(Inertia, FragileNearThreshold) {
  const Inertia in = inertia(Eigen::Vector2d(1.0, 2e-9).asDiagonal().toDenseMatrix());
  EXPECT_TRUE(in.fragile);
  const Inertia robust = inertia(Eigen::Vector2d(1.0, 1e-14).asDiagonal().toDenseMatrix());
  EXPECT_FALSE(robust.fragile);
  EXPECT_EQ(robust.n_zero, 1);
}

TEST(Inertia, InvariantUnderOrthogonalConjugation) {
  Rng rng(12);
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t % 6;
    const Eigen::MatrixXd q = random_symmetric(rng, n);
    const Eigen::MatrixXd o = random_orthogonal(rng, n);
    const Inertia a = inertia(q);
    const Inertia b = inertia(o * q * o.transpose());
    if (a.fragile || b.fragile) continue;
    EXPECT_EQ(a, b);
  }
}

TEST(Rank1Update, Examples) {
  EXPECT_TRUE(rank1_update_nsd(Eigen::Vector2d(1, -1).asDiagonal().toDenseMatrix(), Eigen::Vector2d(1, 0)).is_holds());
  EXPECT_TRUE(rank1_update_nsd(Eigen::Matrix2d::Identity(), Eigen::Vector2d(1, 0)).is_fails());
  EXPECT_THROW(rank1_update_nsd(Eigen::Matrix2d::Identity(), Eigen::Vector2d(1, 0), 0.5), PreconditionError);
  EXPECT_THROW(rank1_update_nsd(-Eigen::Matrix2d::Identity(), Eigen::Vector2d(1, 0)), PreconditionError);
}

TEST(Rank1Update, HoldsForOnePositiveEigenvalue) {
  Rng rng(13);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    const int n = 2 + t % 5;
    const Eigen::MatrixXd q = random_hyperbolic(rng, n);
    Eigen::VectorXd a(n);
    do {
      for (int i = 0; i < n; ++i) a[i] = g(rng);
    } while (a.dot(q * a) < 0.1);
    EXPECT_TRUE(rank1_update_nsd(q, a).is_holds());
  }
}

TEST(Hyperplane, Examples) {
  EXPECT_TRUE(nsd_on_hyperplane(Eigen::Vector3d(1, -1, -1).asDiagonal().toDenseMatrix(), Eigen::Vector3d(1, 0, 0))
                  .is_holds());
  const Verdict v = nsd_on_hyperplane(Eigen::Vector3d(1, 1, -1).asDiagonal().toDenseMatrix(), Eigen::Vector3d(1, 0, 0));
  ASSERT_TRUE(v.is_fails());
  // The witness lies in the hyperplane and has a positive value.
  const Eigen::VectorXd x = v.witness->vectors.front();
  EXPECT_NEAR(x[0], 0.0, 1e-12);
  EXPECT_GT(x[1] * x[1] - x[2] * x[2], 0.0);
  EXPECT_THROW(nsd_on_hyperplane(Eigen::Matrix2d::Identity(), Eigen::Vector2d::Zero()), PreconditionError);
}

TEST(Hyperplane, StrictNeedsDefiniteness) {
  const Eigen::MatrixXd q = Eigen::Vector3d(1, 0, -1).asDiagonal();
  EXPECT_TRUE(nsd_on_hyperplane(q, Eigen::Vector3d(1, 0, 0)).is_holds());
  EXPECT_TRUE(nsd_on_hyperplane(q, Eigen::Vector3d(1, 0, 0), true).is_fails());
}

TEST(LogConcavityCriteria, ThreeConditionsAgree) {
  Rng rng(14);
  std::normal_distribution<double> g;
  int compared = 0;
  for (int t = 0; t < 400; ++t) {
    const int n = 2 + t % 5;
    const Eigen::MatrixXd q = t % 2 ? random_symmetric(rng, n) : random_hyperbolic(rng, n);
    Eigen::VectorXd a(n);
    for (int i = 0; i < n; ++i) a[i] = g(rng);
    if (a.dot(q * a) <= 0.05) continue;
    const Inertia in = inertia(q);
    const Verdict r1 = rank1_update_nsd(q, a);
    const Verdict hp = nsd_on_hyperplane(q, q * a);
    if (in.fragile || r1.is_inconclusive() || hp.is_inconclusive()) continue;
    ++compared;
    const Status sig = in.n_pos == 1 ? Status::Holds : Status::Fails;
    EXPECT_EQ(r1.status, sig);
    EXPECT_EQ(hp.status, sig);
  }
  EXPECT_GT(compared, 100);
}

TEST(Interlacing, CompressionKeepsAtMostOnePositive) {
  Rng rng(15);
  std::normal_distribution<double> g;
  for (int t = 0; t < 50; ++t) {
    const int n = 3 + t % 4;
    const int m = 1 + t % (n - 1);
    const Eigen::MatrixXd q = random_hyperbolic(rng, n);
    Eigen::MatrixXd p(m, n);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) p(i, j) = g(rng);
    }
    EXPECT_LE(inertia(p * q * p.transpose()).n_pos, 1);
  }
}

TEST(ComplementBasis, Orthonormal) {
  const Eigen::Vector4d w(1, 2, -1, 0.5);
  const Eigen::MatrixXd b = complement_basis(w);
  ASSERT_EQ(b.cols(), 3);
  EXPECT_LT((b.transpose() * w).norm(), 1e-12);
  EXPECT_LT((b.transpose() * b - Eigen::Matrix3d::Identity()).norm(), 1e-12);
}

}  // namespace
}  // namespace klorentz
