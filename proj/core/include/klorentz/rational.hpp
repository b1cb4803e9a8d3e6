#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

namespace klorentz {

/// Arbitrary-precision rational number. All exact algebra in the library uses it.
using Rational = mpq_class;
using RatVector = std::vector<Rational>;

/// Formats as "p" or "p/q" in lowest terms.
std::string to_string(const Rational& r);

/// Parses "p", "-p", "p/q" (no whitespace inside). Throws ParseError.
Rational parse_rational(std::string_view text);

/// Exact conversion (every finite double is a dyadic rational).
Rational to_rational(double x);
RatVector to_rational(const Eigen::VectorXd& v);

Eigen::VectorXd to_double(const RatVector& v);

Rational dot(const RatVector& a, const RatVector& b);

/// Dense row-major rational matrix. Deliberately small: the heavy spectral work
/// happens in double precision via Eigen.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);

  static RatMatrix identity(std::size_t n);
  static RatMatrix from_double(const Eigen::MatrixXd& m);
  static RatMatrix from_rows(const std::vector<RatVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  RatVector row(std::size_t i) const;
  RatVector col(std::size_t j) const;

  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const;
  bool is_zero() const;

  RatMatrix transpose() const;
  Eigen::MatrixXd to_double() const;

  RatMatrix& operator+=(const RatMatrix& other);
  RatMatrix& operator-=(const RatMatrix& other);
  RatMatrix& operator*=(const Rational& s);

  friend RatMatrix operator+(RatMatrix a, const RatMatrix& b) { return a += b; }
  friend RatMatrix operator-(RatMatrix a, const RatMatrix& b) { return a -= b; }
  friend RatMatrix operator*(RatMatrix a, const Rational& s) { return a *= s; }
  friend RatMatrix operator*(const Rational& s, RatMatrix a) { return a *= s; }
  friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
  friend RatVector operator*(const RatMatrix& a, const RatVector& v);
  friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Exact rank by Gaussian elimination over Q.
std::size_t rank(const RatMatrix& m);
std::size_t rank(const std::vector<RatVector>& vectors, std::size_t dim);

}  // namespace klorentz
