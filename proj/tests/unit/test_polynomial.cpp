#include <gtest/gtest.h>

#include <random>

#include "klorentz/errors.hpp"
#include "klorentz/polynomial.hpp"
#include "support/generators.hpp"

namespace klorentz {
namespace {

TEST(Polynomial, ParseRoundTrip) {
  const Polynomial f = parse_polynomial("3*x1^2*x2 - 1/2*x3^3 + x1*x2*x3");
  EXPECT_EQ(f.num_vars(), 3u);
  EXPECT_EQ(f.degree(), 3u);
  EXPECT_EQ(parse_polynomial(to_string(f)), f);
  EXPECT_EQ(f.coefficient(Monomial({0, 0, 3})), Rational(-1, 2));
}

TEST(Polynomial, ParseErrorsCarryPosition) {
  try {
    parse_polynomial("x1^2 + x2");
    FAIL() << "inhomogeneous input accepted";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 8u);
  }
  EXPECT_THROW(parse_polynomial("x0^2"), ParseError);
  EXPECT_THROW(parse_polynomial("x1 x2"), ParseError);
  EXPECT_THROW(parse_polynomial(""), ParseError);
  EXPECT_THROW(parse_polynomial("x3", 2), ParseError);
}

TEST(Polynomial, DeclaredVariableCountPads) {
  const Polynomial f = parse_polynomial("x1^2", 3);
  EXPECT_EQ(f.num_vars(), 3u);
}

TEST(Polynomial, DirectionalDerivativeMatchesGradient) {
  // D_a f (x) = grad f(x) . a, checked at random points.
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const Polynomial f = testing::rand_form(rng, 3, 3, -4, 4);
    if (f.is_zero()) continue;
    const RatVector a = testing::rand_rat_vector(rng, 3, -2, 2);
    const Polynomial da = directional_derivative(f, a);
    const Eigen::Vector3d x(0.3, -0.7, 1.1);
    EXPECT_NEAR(da.evaluate(Eigen::VectorXd(x)), gradient_at(f, x).dot(to_double(a)), 1e-10);
  }
}

TEST(Polynomial, DerivativesCommute) {
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    const Polynomial f = testing::rand_form(rng, 4, 4, -3, 3);
    const RatVector a = testing::rand_rat_vector(rng, 4, -2, 2);
    const RatVector b = testing::rand_rat_vector(rng, 4, -2, 2);
    EXPECT_EQ(directional_derivative(directional_derivative(f, a), b),
              directional_derivative(directional_derivative(f, b), a));
  }
}

TEST(Polynomial, EulerIdentityExact) {
  // D_x f evaluated at x equals d f(x): exact at rational points.
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    const unsigned d = 1 + t % 4;
    const Polynomial f = testing::rand_form(rng, 3, d, -5, 5);
    const RatVector x = testing::rand_rat_vector(rng, 3, -3, 3, 2);
    EXPECT_EQ(directional_derivative(f, x).evaluate(x), Rational(d) * f.evaluate(x));
  }
}

TEST(Polynomial, HessianOfQuadraticIsTwiceMatrix) {
  const Polynomial f = parse_polynomial("x1^2 + 3*x1*x2 - x2^2");
  const QuadraticForm q = as_quadratic(f);
  EXPECT_EQ(q.matrix()(0, 1), Rational(3, 2));
  const Eigen::MatrixXd h = hessian_at(f, Eigen::VectorXd::Zero(2));
  EXPECT_TRUE(h.isApprox(2.0 * q.matrix_double()));
  EXPECT_EQ(q.to_polynomial(), f);
}

TEST(Polynomial, ComposeLinear) {
  // (x1 + x2)^2 under x1 -> x1 - x2, x2 -> x2 gives x1^2.
  const Polynomial f = parse_polynomial("x1^2 + 2*x1*x2 + x2^2");
  const RatMatrix a = RatMatrix::from_rows({{1, -1}, {0, 1}});
  EXPECT_EQ(compose_linear(f, a), parse_polynomial("x1^2", 2));
}

TEST(Polynomial, DegreeChecks) {
  const Polynomial c = parse_polynomial("5");
  EXPECT_EQ(c.degree(), 0u);
  EXPECT_THROW(directional_derivative(c, RatVector{}), PreconditionError);
  EXPECT_THROW(directional_derivative(parse_polynomial("x1*x2"), RatVector{1}), DimensionError);
  EXPECT_THROW(as_quadratic(parse_polynomial("x1^3")), PreconditionError);
}

TEST(Polynomial, CastAndChain) {
  const Polynomial f = parse_polynomial("x1^2*x2 + x1*x2*x3");
  const PolynomialD fd = f.cast<double>();
  const std::vector<Eigen::VectorXd> dirs{Eigen::Vector3d(1, 0, 0)};
  const Eigen::MatrixXd q = quadratic_matrix(derivative_chain(fd, dirs));
  // D_e1 f = 2 x1 x2 + x2 x3.
  Eigen::Matrix3d expect;
  expect << 0, 1, 0, 1, 0, 0.5, 0, 0.5, 0;
  EXPECT_TRUE(q.isApprox(expect));
}

}  // namespace
}  // namespace klorentz
