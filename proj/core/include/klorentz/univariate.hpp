#pragma once

#include <utility>
#include <vector>

#include "klorentz/rational.hpp"

namespace klorentz {

/// Dense univariate polynomial over Q, coefficients from degree 0 upwards.
/// The zero polynomial has no coefficients and degree -1.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(RatVector coeffs);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const RatVector& coeffs() const { return c_; }
  const Rational& leading() const { return c_.back(); }

  Rational operator()(const Rational& t) const;
  UPoly derivative() const;

  friend UPoly operator-(const UPoly& a);
  friend UPoly operator*(const UPoly& a, const Rational& s);
  /// Quotient and remainder of polynomial division. Throws on division by zero.
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  RatVector c_;
};

/// Monic greatest common divisor; gcd(0, 0) = 0.
UPoly gcd(UPoly a, UPoly b);
/// p / gcd(p, p'): same real roots, all simple.
UPoly squarefree_part(const UPoly& p);
/// Standard Sturm sequence p, p', -rem(p_{i-1}, p_i), ...
std::vector<UPoly> sturm_chain(const UPoly& p);
int sign_changes(const std::vector<UPoly>& chain, const Rational& t);
/// Integer B with every real root strictly inside (-B, B).
Rational cauchy_bound(const UPoly& p);

/// Disjoint intervals (a, b) with rational endpoints that are not roots, each
/// containing exactly one real root of the squarefree polynomial p. Sorted.
std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UPoly& p);

}  // namespace klorentz
