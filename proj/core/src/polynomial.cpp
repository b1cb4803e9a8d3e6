#include "klorentz/polynomial.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace klorentz {

QuadraticForm::QuadraticForm(RatMatrix q) : q_(std::move(q)) {
  if (!q_.is_square()) throw PreconditionError("quadratic form matrix must be square");
  if (!q_.is_symmetric()) throw PreconditionError("quadratic form matrix must be symmetric");
}

Polynomial QuadraticForm::to_polynomial() const {
  const std::size_t n = num_vars();
  Polynomial p(n, 2);
  for (std::size_t i = 0; i < n; ++i) {
    p.add_term(Monomial::variable(n, i, 2), q_(i, i));
    for (std::size_t j = i + 1; j < n; ++j) {
      p.add_term(Monomial::variable(n, i) * Monomial::variable(n, j), Rational(2 * q_(i, j)));
    }
  }
  return p;
}

Polynomial compose_linear(const Polynomial& f, const RatMatrix& a) {
  const std::size_t n = f.num_vars();
  if (a.rows() != n || a.cols() != n) throw DimensionError("compose_linear: matrix must be n x n");
  // Row i of A is the linear form substituted for x_i.
  std::vector<Polynomial> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) images.push_back(Polynomial::linear(a.row(i)));

  Polynomial out(n, f.degree());
  for (const auto& [m, c] : f.terms()) {
    Polynomial term = Polynomial::constant(n, c);
    for (std::size_t i = 0; i < n; ++i) {
      for (unsigned k = 0; k < m[i]; ++k) term = term * images[i];
    }
    out += term;
  }
  return out;
}

QuadraticForm as_quadratic(const Polynomial& f) {
  if (f.degree() != 2) throw PreconditionError("as_quadratic: degree must be 2, got " + std::to_string(f.degree()));
  const std::size_t n = f.num_vars();
  RatMatrix q(n, n);
  for (const auto& [m, c] : f.terms()) {
    std::optional<std::size_t> first;
    std::optional<std::size_t> second;
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] == 2) {
        first = second = i;
      } else if (m[i] == 1) {
        (first ? second : first) = i;
      }
    }
    if (*first == *second) {
      q(*first, *first) += c;
    } else {
      Rational half = c / 2;
      q(*first, *second) += half;
      q(*second, *first) += half;
    }
  }
  return QuadraticForm(std::move(q));
}

Eigen::MatrixXd quadratic_matrix(const PolynomialD& f) {
  if (f.degree() != 2) throw PreconditionError("quadratic_matrix: degree must be 2");
  const auto n = static_cast<Eigen::Index>(f.num_vars());
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [m, c] : f.terms()) {
    Eigen::Index first = -1;
    Eigen::Index second = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      const unsigned e = m[static_cast<std::size_t>(i)];
      if (e == 2) {
        first = second = i;
      } else if (e == 1) {
        (first < 0 ? first : second) = i;
      }
    }
    if (first == second) {
      q(first, first) += c;
    } else {
      q(first, second) += 0.5 * c;
      q(second, first) += 0.5 * c;
    }
  }
  return q;
}

// ---------------------------------------------------------------------------
// Parser.

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::size_t num_vars) : text_(text), num_vars_(num_vars) {}

  Polynomial parse() {
    struct ParsedTerm {
      Rational coeff;
      std::vector<unsigned> exps;  // indexed by variable, grown on demand
      unsigned degree;
      std::size_t line, column;
    };
    std::vector<ParsedTerm> terms;
    std::size_t max_var = 0;

    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        advance();
        skip_ws();
      } else if (!first) {
        fail(std::string("expected '+' or '-' but found '") + peek() + "'");
      }
      first = false;

      ParsedTerm t{Rational(sign), {}, 0, line_, column_};
      if (std::isdigit(static_cast<unsigned char>(peek_or_nul()))) {
        t.coeff *= parse_coefficient();
        skip_ws();
        if (peek_or_nul() == '*') {
          advance();
          skip_ws();
        } else {
          // Bare constant term.
          terms.push_back(std::move(t));
          skip_ws();
          continue;
        }
      }
      while (true) {
        if (peek_or_nul() != 'x') fail("expected variable 'x<index>'");
        advance();
        const std::size_t var_line = line_;
        const std::size_t var_col = column_;
        const unsigned long idx = parse_unsigned("variable index");
        if (idx == 0) throw ParseError("variable indices are 1-based", var_line, var_col);
        skip_ws();
        unsigned long power = 1;
        if (peek_or_nul() == '^') {
          advance();
          skip_ws();
          power = parse_unsigned("exponent");
          skip_ws();
        }
        if (t.exps.size() < idx) t.exps.resize(idx, 0);
        t.exps[idx - 1] += static_cast<unsigned>(power);
        t.degree += static_cast<unsigned>(power);
        max_var = std::max<std::size_t>(max_var, idx);
        if (peek_or_nul() == '*') {
          advance();
          skip_ws();
          continue;
        }
        break;
      }
      terms.push_back(std::move(t));
      skip_ws();
    }

    std::size_t n = max_var;
    if (num_vars_ != 0) {
      if (num_vars_ < max_var) {
        throw ParseError("polynomial uses x" + std::to_string(max_var) + " but only " +
                         std::to_string(num_vars_) + " variables were declared");
      }
      n = num_vars_;
    }
    const unsigned degree = terms.front().degree;
    for (const auto& t : terms) {
      if (t.degree != degree) {
        throw ParseError("inhomogeneous polynomial: term degrees " + std::to_string(degree) +
                             " and " + std::to_string(t.degree),
                         t.line, t.column);
      }
    }
    Polynomial p(n, degree);
    for (auto& t : terms) {
      t.exps.resize(n, 0);
      p.add_term(Monomial(std::move(t.exps)), t.coeff);
    }
    return p;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char peek_or_nul() const { return at_end() ? '\0' : text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, column_); }

  std::string digits() {
    std::string s;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      s.push_back(peek());
      advance();
    }
    return s;
  }

  unsigned long parse_unsigned(const char* what) {
    std::string s = digits();
    if (s.empty()) fail(std::string("expected ") + what);
    if (s.size() > 9) fail(std::string(what) + " too large");
    return std::stoul(s);
  }

  Rational parse_coefficient() {
    std::string num = digits();
    skip_ws();
    if (peek_or_nul() == '/') {
      advance();
      skip_ws();
      std::string den = digits();
      if (den.empty()) fail("expected denominator");
      if (mpz_class(den) == 0) fail("zero denominator");
      Rational r{mpz_class(num), mpz_class(den)};
      r.canonicalize();
      return r;
    }
    return Rational(mpz_class(num));
  }

  std::string_view text_;
  std::size_t num_vars_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t num_vars) {
  return PolyParser(text, num_vars).parse();
}

std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    const bool negative = c < 0;
    Rational mag = abs(c);
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const bool constant = m.degree() == 0;
    if (constant) {
      out << to_string(mag);
      continue;
    }
    if (mag != 1) out << to_string(mag) << "*";
    bool first_factor = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!first_factor) out << "*";
      first_factor = false;
      out << "x" << (i + 1);
      if (m[i] > 1) out << "^" << m[i];
    }
  }
  return out.str();
}

}  // namespace klorentz
