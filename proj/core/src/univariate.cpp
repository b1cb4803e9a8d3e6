#include "klorentz/univariate.hpp"

#include <algorithm>
#include <stdexcept>

#include "klorentz/errors.hpp"

namespace klorentz {

UPoly::UPoly(RatVector coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UPoly::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  RatVector d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return UPoly(std::move(d));
}

UPoly operator-(const UPoly& a) {
  RatVector c = a.c_;
  for (auto& x : c) x = -x;
  return UPoly(std::move(c));
}

UPoly operator*(const UPoly& a, const Rational& s) {
  RatVector c = a.c_;
  for (auto& x : c) x *= s;
  return UPoly(std::move(c));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  RatVector r = a.c_;
  const int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  RatVector q(static_cast<std::size_t>(a.degree() - db + 1), Rational(0));
  for (int k = a.degree(); k >= db; --k) {
    const Rational f = r[static_cast<std::size_t>(k)] / b.leading();
    q[static_cast<std::size_t>(k - db)] = f;
    if (f == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(k - db + j)] -= f * b.c_[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a * (Rational(1) / a.leading());
}

UPoly squarefree_part(const UPoly& p) {
  if (p.degree() <= 0) return p;
  const UPoly g = gcd(p, p.derivative());
  return divmod(p, g).first;
}

std::vector<UPoly> sturm_chain(const UPoly& p) {
  std::vector<UPoly> chain{p};
  if (p.is_zero()) return chain;
  UPoly d = p.derivative();
  while (!d.is_zero()) {
    chain.push_back(d);
    const std::size_t n = chain.size();
    d = -divmod(chain[n - 2], chain[n - 1]).second;
  }
  return chain;
}

int sign_changes(const std::vector<UPoly>& chain, const Rational& t) {
  int changes = 0;
  int last = 0;
  for (const auto& q : chain) {
    const int s = sgn(q(t));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Rational cauchy_bound(const UPoly& p) {
  if (p.degree() <= 0) return 1;
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) {
    const Rational r = abs(p.coeffs()[static_cast<std::size_t>(i)] / p.leading());
    if (r > m) m = r;
  }
  mpz_class ceil_m = m.get_num() / m.get_den() + 1;
  return Rational(ceil_m + 1);
}

std::vector<std::pair<Rational, Rational>> isolate_real_roots(const UPoly& p) {
  std::vector<std::pair<Rational, Rational>> out;
  if (p.degree() <= 0) return out;
  const std::vector<UPoly> chain = sturm_chain(p);
  auto count = [&](const Rational& a, const Rational& b) { return sign_changes(chain, a) - sign_changes(chain, b); };
  const Rational bound = cauchy_bound(p);

  std::vector<std::pair<Rational, Rational>> work{{-bound, bound}};
  while (!work.empty()) {
    auto [a, b] = work.back();
    work.pop_back();
    const int c = count(a, b);
    if (c == 0) continue;
    if (c == 1) {
      out.emplace_back(a, b);
      continue;
    }
    // Split at a non-root point near the midpoint.
    Rational m = (a + b) / 2;
    Rational step = (b - a) / 7;
    while (p(m) == 0) {
      m += step;
      step /= 3;
    }
    work.emplace_back(a, m);
    work.emplace_back(m, b);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

}  // namespace klorentz
