#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "klorentz/errors.hpp"
#include "klorentz/rational.hpp"

namespace klorentz {

/// Exponent vector x^a. Dense: one entry per variable.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<unsigned> exponents) : exps_(std::move(exponents)) {}

  static Monomial one(std::size_t n) { return Monomial(std::vector<unsigned>(n, 0)); }
  static Monomial variable(std::size_t n, std::size_t i, unsigned power = 1) {
    std::vector<unsigned> e(n, 0);
    e.at(i) = power;
    return Monomial(std::move(e));
  }

  std::size_t size() const { return exps_.size(); }
  unsigned degree() const {
    unsigned d = 0;
    for (unsigned e : exps_) d += e;
    return d;
  }
  unsigned operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<unsigned>& exponents() const { return exps_; }

  Monomial operator*(const Monomial& other) const {
    if (other.size() != size()) throw DimensionError("monomial product: variable count mismatch");
    std::vector<unsigned> e = exps_;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] += other.exps_[i];
    return Monomial(std::move(e));
  }

  /// Monomial with exponent i lowered by one. Requires exps[i] > 0.
  Monomial lowered(std::size_t i) const {
    std::vector<unsigned> e = exps_;
    --e[i];
    return Monomial(std::move(e));
  }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

 private:
  std::vector<unsigned> exps_;
};

namespace detail {

inline bool is_zero_coeff(const Rational& c) { return c == 0; }
inline bool is_zero_coeff(double c) { return c == 0.0; }
inline double to_double(const Rational& c) { return c.get_d(); }
inline double to_double(double c) { return c; }

}  // namespace detail

/// Homogeneous form in n variables of fixed degree d with coefficients in C.
///
/// Terms are kept in canonical form: monomials in descending lexicographic order,
/// no stored zero coefficients. The zero polynomial has an empty term map but
/// still carries a nominal degree.
template <class C>
class BasicPolynomial {
 public:
  using Coefficient = C;
  using TermMap = std::map<Monomial, C, std::greater<>>;

  BasicPolynomial() = default;
  BasicPolynomial(std::size_t n, unsigned degree) : n_(n), degree_(degree) {}

  static BasicPolynomial constant(std::size_t n, const C& c) {
    BasicPolynomial p(n, 0);
    p.add_term(Monomial::one(n), c);
    return p;
  }

  static BasicPolynomial linear(const std::vector<C>& coeffs) {
    BasicPolynomial p(coeffs.size(), 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      p.add_term(Monomial::variable(coeffs.size(), i), coeffs[i]);
    }
    return p;
  }

  std::size_t num_vars() const { return n_; }
  unsigned degree() const { return degree_; }
  const TermMap& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  C coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }

  /// Adds c * m. Throws if m has the wrong length or degree.
  void add_term(const Monomial& m, const C& c) {
    if (m.size() != n_) throw DimensionError("term has wrong number of variables");
    if (m.degree() != degree_) {
      throw PreconditionError("term degree " + std::to_string(m.degree()) +
                              " differs from polynomial degree " + std::to_string(degree_));
    }
    if (detail::is_zero_coeff(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (detail::is_zero_coeff(it->second)) terms_.erase(it);
    }
  }

  BasicPolynomial& operator+=(const BasicPolynomial& other) {
    check_compatible(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
  }
  BasicPolynomial& operator-=(const BasicPolynomial& other) {
    check_compatible(other);
    for (const auto& [m, c] : other.terms_) add_term(m, C(-c));
    return *this;
  }
  BasicPolynomial& operator*=(const C& s) {
    if (detail::is_zero_coeff(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend BasicPolynomial operator+(BasicPolynomial a, const BasicPolynomial& b) { return a += b; }
  friend BasicPolynomial operator-(BasicPolynomial a, const BasicPolynomial& b) { return a -= b; }
  friend BasicPolynomial operator*(BasicPolynomial a, const C& s) { return a *= s; }
  friend BasicPolynomial operator*(const C& s, BasicPolynomial a) { return a *= s; }
  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    if (a.n_ != b.n_) throw DimensionError("polynomial product: variable count mismatch");
    BasicPolynomial p(a.n_, a.degree_ + b.degree_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) p.add_term(ma * mb, C(ca * cb));
    }
    return p;
  }
  friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) {
    return a.n_ == b.n_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

  /// Evaluates at a point of matching length. Exact for Rational points.
  template <class V>
  auto evaluate(const V& x) const {
    using Scalar = std::decay_t<decltype(x[0])>;
    if (static_cast<std::size_t>(x.size()) != n_) throw DimensionError("evaluate: point has wrong length");
    Scalar total = 0;
    for (const auto& [m, c] : terms_) {
      Scalar t = as_scalar<Scalar>(c);
      for (std::size_t i = 0; i < n_; ++i) {
        for (unsigned k = 0; k < m[i]; ++k) t *= x[i];
      }
      total += t;
    }
    return total;
  }

  template <class D>
  BasicPolynomial<D> cast() const {
    BasicPolynomial<D> out(n_, degree_);
    for (const auto& [m, c] : terms_) out.add_term(m, as_scalar<D>(c));
    return out;
  }

  /// Sum of absolute coefficient values; a cheap scale for tolerances.
  double coefficient_l1() const {
    double s = 0.0;
    for (const auto& [m, c] : terms_) s += std::abs(detail::to_double(c));
    return s;
  }

 private:
  template <class S>
  static S as_scalar(const C& c) {
    if constexpr (std::is_same_v<S, double>) {
      return detail::to_double(c);
    } else {
      return S(c);
    }
  }

  void check_compatible(const BasicPolynomial& other) const {
    if (other.n_ != n_) throw DimensionError("polynomial sum: variable count mismatch");
    if (other.degree_ != degree_) {
      throw PreconditionError("polynomial sum: degrees " + std::to_string(degree_) + " and " +
                              std::to_string(other.degree_) + " differ");
    }
  }

  std::size_t n_ = 0;
  unsigned degree_ = 0;
  TermMap terms_;
};

using Polynomial = BasicPolynomial<Rational>;
using PolynomialD = BasicPolynomial<double>;

/// Symmetric matrix representation q(x) = x^T Q x of a quadratic form.
class QuadraticForm {
 public:
  QuadraticForm() = default;
  /// Throws PreconditionError unless q is square and exactly symmetric.
  explicit QuadraticForm(RatMatrix q);

  std::size_t num_vars() const { return q_.rows(); }
  const RatMatrix& matrix() const { return q_; }
  Eigen::MatrixXd matrix_double() const { return q_.to_double(); }
  Polynomial to_polynomial() const;

 private:
  RatMatrix q_;
};

// ---------------------------------------------------------------------------
// Calculus on forms.

template <class C>
BasicPolynomial<C> partial(const BasicPolynomial<C>& f, std::size_t i) {
  if (i >= f.num_vars()) throw DimensionError("partial: variable index out of range");
  if (f.degree() == 0) throw PreconditionError("partial: degree-0 form has no derivative");
  BasicPolynomial<C> out(f.num_vars(), f.degree() - 1);
  for (const auto& [m, c] : f.terms()) {
    if (m[i] == 0) continue;
    out.add_term(m.lowered(i), C(c * C(m[i])));
  }
  return out;
}

/// D_a f = sum_i a_i df/dx_i. Exact for rational f and a.
template <class C>
BasicPolynomial<C> directional_derivative(const BasicPolynomial<C>& f, std::span<const C> a) {
  if (a.size() != f.num_vars()) throw DimensionError("directional_derivative: direction has wrong length");
  if (f.degree() == 0) throw PreconditionError("directional_derivative: degree-0 form has no derivative");
  BasicPolynomial<C> out(f.num_vars(), f.degree() - 1);
  for (const auto& [m, c] : f.terms()) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (m[i] == 0 || detail::is_zero_coeff(a[i])) continue;
      out.add_term(m.lowered(i), C(c * C(m[i]) * a[i]));
    }
  }
  return out;
}

inline Polynomial directional_derivative(const Polynomial& f, const RatVector& a) {
  return directional_derivative<Rational>(f, std::span<const Rational>(a));
}

inline PolynomialD directional_derivative(const PolynomialD& f, const Eigen::VectorXd& a) {
  return directional_derivative<double>(f, std::span<const double>(a.data(), static_cast<std::size_t>(a.size())));
}

/// Gradient of f at a point, in double precision.
template <class C>
Eigen::VectorXd gradient_at(const BasicPolynomial<C>& f, const Eigen::VectorXd& a) {
  const std::size_t n = f.num_vars();
  if (static_cast<std::size_t>(a.size()) != n) throw DimensionError("gradient_at: point has wrong length");
  Eigen::VectorXd g = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  if (f.degree() == 0) return g;
  for (const auto& [m, c] : f.terms()) {
    const double cd = detail::to_double(c);
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] == 0) continue;
      double t = cd * m[i];
      for (std::size_t k = 0; k < n; ++k) {
        const unsigned e = k == i ? m[k] - 1 : m[k];
        for (unsigned r = 0; r < e; ++r) t *= a[static_cast<Eigen::Index>(k)];
      }
      g[static_cast<Eigen::Index>(i)] += t;
    }
  }
  return g;
}

/// Hessian H_f(a), in double precision. Exactly symmetric by construction.
template <class C>
Eigen::MatrixXd hessian_at(const BasicPolynomial<C>& f, const Eigen::VectorXd& a) {
  const std::size_t n = f.num_vars();
  if (static_cast<std::size_t>(a.size()) != n) throw DimensionError("hessian_at: point has wrong length");
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  if (f.degree() < 2) return h;
  std::vector<unsigned> e;
  for (const auto& [m, c] : f.terms()) {
    const double cd = detail::to_double(c);
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] == 0) continue;
      for (std::size_t j = i; j < n; ++j) {
        const unsigned mj = (j == i) ? m[j] - 1 : m[j];
        if (mj == 0) continue;
        double t = cd * m[i] * mj;
        e = m.exponents();
        --e[i];
        --e[j];
        for (std::size_t k = 0; k < n; ++k) {
          for (unsigned r = 0; r < e[k]; ++r) t *= a[static_cast<Eigen::Index>(k)];
        }
        h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += t;
      }
    }
  }
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < h.cols(); ++j) h(j, i) = h(i, j);
  }
  return h;
}

/// f(Ax), expanded to canonical form.
Polynomial compose_linear(const Polynomial& f, const RatMatrix& a);

/// Matrix of a degree-2 form; off-diagonal entries are half the mixed coefficients.
QuadraticForm as_quadratic(const Polynomial& f);

/// Double-precision counterpart of as_quadratic.
Eigen::MatrixXd quadratic_matrix(const PolynomialD& f);

/// D_{a_1} ... D_{a_k} f, applied left to right.
template <class C, class Dir>
BasicPolynomial<C> derivative_chain(BasicPolynomial<C> f, const std::vector<Dir>& dirs) {
  for (const auto& a : dirs) f = directional_derivative(f, a);
  return f;
}

// ---------------------------------------------------------------------------
// Text form: "3*x1^2*x2 - 1/2*x3^3".

/// Parses the polynomial grammar. The variable count is the largest index used,
/// or `num_vars` if given (which must not be smaller). Throws ParseError with
/// line/column on grammar violations and on inhomogeneous input.
Polynomial parse_polynomial(std::string_view text, std::size_t num_vars = 0);

std::string to_string(const Polynomial& f);

}  // namespace klorentz
