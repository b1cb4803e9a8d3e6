// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "../support/generators.hpp"
#include "klorentz/klorentz.hpp"

using namespace klorentz;
using namespace klorentz::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Tally {
  std::map<std::string, int> counts;
  void add(const std::string& key) { ++counts[key]; }
  std::string str() const {
    std::ostringstream out;
    bool first = true;
    for (const auto& [k, v] : counts) {
      out << (first ? "" : " ") << k << "=" << v;
      first = false;
    }
    return out.str();
  }
};

std::string st(const Verdict& v) { return std::string(to_string(v.status)); }

bool contradict(const Verdict& a, const Verdict& b) {
  return (a.is_holds() && b.is_fails()) || (a.is_fails() && b.is_holds());
}

Polynomial example_f() { return parse_polynomial("x1^2*x2 + x1^2*x3 + x1*x2*x3 + x4^3"); }

// ---------------------------------------------------------------------------

Outcome criterion_1() {
  const Polynomial f = example_f();
  const Cone k = Cone::orthant(4);
  CheckPlan plan;
  plan.samples = 2000;
  std::ostringstream d;
  bool ok = true;
  for (std::size_t i = 0; i < 4; ++i) {
    RatVector e(4, Rational(0));
    e[i] = 1;
    const Verdict v = is_lorentzian_sampled(directional_derivative(f, e), k, plan);
    d << "D_e" << i + 1 << "=" << st(v) << " ";
    ok = ok && v.is_holds();
  }
  const Verdict ones = is_lorentzian_sampled(directional_derivative(f, RatVector(4, Rational(1))), k, plan);
  const Verdict sampled = is_lorentzian_sampled(f, k, plan);
  const Verdict exact = is_lorentzian_extreme_reduction(f, k, std::nullopt, plan);
  d << "D_1=" << st(ones) << " sampled=" << st(sampled) << " extreme=" << st(exact);
  ok = ok && ones.is_fails() && sampled.is_fails() && exact.is_fails();
  return {ok, d.str()};
}

Outcome criterion_2() {
  const Polynomial f = parse_polynomial("x1*x2 + x1*x3");
  std::ostringstream d;
  bool ok = true;
  for (std::size_t i = 0; i < 3; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Unit(3, static_cast<Eigen::Index>(i));
    const Eigen::MatrixXd h = hessian_at(f, e);
    const RatMatrix hr = RatMatrix::from_double(h);
    const std::size_t r = rank(hr);
    const Verdict irr = orthant_graph_irreducible(hr);
    d << "H(e" << i + 1 << "): rank " << r << "/3, graph " << st(irr) << "; ";
    ok = ok && r == 3 && irr.is_holds();
  }
  RatVector e2(3, Rational(0)), e3(3, Rational(0));
  e2[1] = 1;
  e3[2] = 1;
  const Polynomial d23 = directional_derivative(directional_derivative(f, e2), e3);
  d << "d2d3 f = " << to_string(d23);
  ok = ok && d23.is_zero();
  return {ok, d.str()};
}

Outcome criterion_3() {
  const QuadraticForm q = as_quadratic(parse_polynomial("x1^2 - 2*x1*x2 + x2^2"));
  const Cone k = Cone::orthant(2);
  const Inertia in = inertia(q.matrix_double());
  const Rational q1 = q.matrix()(0, 0);
  const Rational q2 = q.matrix()(1, 1);
  const Verdict v = quad_is_lorentzian(q, k);
  std::ostringstream d;
  d << "inertia (" << in.n_pos << "," << in.n_neg << "," << in.n_zero << ") q(e1)=" << q1 << " q(e2)=" << q2
    << " verdict=" << st(v);
  return {in.n_pos == 1 && in.n_neg == 0 && in.n_zero == 1 && q1 >= 0 && q2 >= 0 && v.is_fails(), d.str()};
}

// Shared quadratic battery for criteria 4 and 7.
struct BatteryStats {
  int instances = 0;
  int inconclusive = 0;
  int disagreements = 0;
  int irreducibility_checked = 0;
  int irreducibility_violations = 0;
  std::string first_disagreement;
  std::string first_violation;
};

BatteryStats g_battery;

void check_irreducible(const QuadraticForm& q, const Cone& k, BatteryStats& s) {
  const Inertia in = inertia(q.matrix_double());
  if (in.fragile || in.n_zero != 0) return;
  ++s.irreducibility_checked;
  const IrreducibilityResult r = is_k_irreducible(quadratic_as_map(q, k), k);
  if (!r.verdict.is_holds()) {
    ++s.irreducibility_violations;
    if (s.first_violation.empty()) s.first_violation = k.name() + " " + st(r.verdict) + " " + r.verdict.detail;
  }
}

Outcome criterion_4() {
  std::vector<Cone> cones;
  for (std::size_t n = 2; n <= 6; ++n) cones.push_back(Cone::orthant(n));
  for (std::size_t n = 2; n <= 5; ++n) cones.push_back(Cone::second_order(n));
  for (std::size_t n = 1; n <= 3; ++n) cones.push_back(Cone::psd(n));
  const std::size_t per_kind = 1000;
  Rng rng(4);
  BatteryStats& s = g_battery;
  Tally verdicts;
  for (const char* kind : {"orthant", "soc", "psd"}) {
    std::vector<const Cone*> pool;
    for (const auto& c : cones) {
      if (std::string(to_string(c.kind())) == kind) pool.push_back(&c);
    }
    for (std::size_t t = 0; t < per_kind; ++t) {
      const Cone& k = *pool[t % pool.size()];
      const QuadraticForm q = rand_quadratic(k, rng);
      CheckPlan plan;
      plan.seed = t;
      std::vector<Verdict> vs;
      for (PositivityPath p : {PositivityPath::DualMap, PositivityPath::ExtremePairs, PositivityPath::InteriorValues,
                               PositivityPath::DefinitionSampled}) {
        plan.positivity = p;
        vs.push_back(quad_is_lorentzian(q, k, plan));
      }
      ++s.instances;
      bool any_inconclusive = false;
      bool disagree = false;
      for (const auto& v : vs) any_inconclusive = any_inconclusive || v.is_inconclusive();
      for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) disagree = disagree || contradict(vs[i], vs[j]);
      }
      if (any_inconclusive) ++s.inconclusive;
      if (disagree) {
        ++s.disagreements;
        if (s.first_disagreement.empty()) {
          std::ostringstream o;
          o << k.name() << " " << to_string(q.to_polynomial()) << " :";
          for (const auto& v : vs) o << " " << st(v) << "(" << v.method << ")";
          s.first_disagreement = o.str();
        }
      }
      verdicts.add(st(vs[0]) + (vs[0].is_fails() ? ":" + vs[0].method : ""));
      if (vs[0].is_holds()) check_irreducible(q, k, s);
    }
  }
  const double rate = static_cast<double>(s.inconclusive) / s.instances;
  std::ostringstream d;
  d << s.instances << " quadratics, " << s.disagreements << " disagreements, inconclusive rate " << rate * 100
    << "% [" << verdicts.str() << "]";
  if (!s.first_disagreement.empty()) d << "; first: " << s.first_disagreement;
  return {s.disagreements == 0 && rate < 0.02, d.str()};
}

Outcome criterion_5() {
  std::vector<Cone> cones{Cone::second_order(3), Cone::second_order(4), Cone::second_order(5), Cone::psd(2),
                          Cone::psd(3)};
  Rng rng(5);
  int disagreements = 0;
  int compared = 0;
  Tally verdicts;
  std::string first;
  for (std::size_t t = 0; t < 500; ++t) {
    const Cone& k = cones[t % cones.size()];
    const QuadraticForm q = rand_hyperbolic_quadratic(k, rng);
    CheckPlan plan;
    plan.seed = t;
    const Verdict a = quad_extreme_value_test(q, k, plan);
    const Verdict b = quad_is_lorentzian(q, k, plan);
    verdicts.add(st(a) + "/" + st(b));
    if (a.is_inconclusive() || b.is_inconclusive()) continue;
    ++compared;
    if (a.status != b.status) {
      ++disagreements;
      if (first.empty()) first = k.name() + " " + to_string(q.to_polynomial());
    }
    if (b.is_holds()) check_irreducible(q, k, g_battery);
  }
  std::ostringstream d;
  d << compared << " compared, " << disagreements << " disagreements [" << verdicts.str() << "]";
  if (!first.empty()) d << "; first: " << first;
  return {disagreements == 0 && compared > 0, d.str()};
}

Outcome criterion_6() {
  Rng rng(6);
  int disagreements = 0;
  int bad_lambda = 0;
  int compared = 0;
  Tally verdicts;
  std::string first;
  for (std::size_t t = 0; t < 500; ++t) {
    const std::size_t n = 3 + t % 4;
    const Cone k = Cone::second_order(n);
    const QuadraticForm q = rand_quadratic(k, rng);
    const SocCertificate cert = quad_soc_certificate(q);
    CheckPlan plan;
    plan.positivity = PositivityPath::DefinitionSampled;
    plan.seed = t;
    const Verdict v = quad_is_lorentzian(q, k, plan);
    verdicts.add(st(cert.verdict) + "/" + st(v));
    if (cert.verdict.is_holds()) {
      Eigen::MatrixXd b = -Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      b(0, 0) = 1;
      const double lam = cert.lambda.value_or(NAN);
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q.matrix_double() - lam * b);
      if (!(lam >= 0.0) || !(es.eigenvalues().minCoeff() >= -1e-8)) ++bad_lambda;
    }
    if (cert.verdict.is_inconclusive() || v.is_inconclusive()) continue;
    ++compared;
    if (cert.verdict.status != v.status) {
      ++disagreements;
      if (first.empty()) first = k.name() + " " + to_string(q.to_polynomial());
    }
    if (v.is_holds()) check_irreducible(q, k, g_battery);
  }
  std::ostringstream d;
  d << compared << " compared, " << disagreements << " disagreements, " << bad_lambda << " bad multipliers ["
    << verdicts.str() << "]";
  if (!first.empty()) d << "; first: " << first;
  return {disagreements == 0 && bad_lambda == 0 && compared >= 450, d.str()};
}

Outcome criterion_7() {
  const BatteryStats& s = g_battery;
  std::ostringstream d;
  d << s.irreducibility_checked << " nonsingular Lorentzian quadratics, " << s.irreducibility_violations
    << " not K-irreducible";
  if (!s.first_violation.empty()) d << "; first: " << s.first_violation;
  return {s.irreducibility_violations == 0 && s.irreducibility_checked > 0, d.str()};
}

// Degree-d battery on orthants.
Polynomial rand_degree_form(Rng& rng, std::size_t n, unsigned d, std::string* family) {
  std::uniform_int_distribution<int> pick(0, 9);
  const int f = pick(rng);
  if (f <= 2) {
    *family = "product";
    return rand_stable_product(rng, n, d);
  }
  if (f <= 4) {
    *family = "elementary";
    return weighted_elementary(rng, n, std::min<unsigned>(d, static_cast<unsigned>(n)));
  }
  if (f <= 6) {
    *family = "perturbed";
    Polynomial p = rand_stable_product(rng, n, d);
    const Polynomial noise = rand_form(rng, n, d, -3, 3, 0.3);
    if (noise.is_zero()) return p;
    std::uniform_int_distribution<int> s(1, 8);
    return p + noise * Rational(s(rng), 2);
  }
  *family = "sparse";
  Polynomial p = rand_form(rng, n, d, 0, 3, 0.4);
  if (p.is_zero()) return rand_stable_product(rng, n, d);
  return p;
}

Outcome criterion_8() {
  Rng rng(8);
  int contradictions = 0;
  Tally verdicts;
  std::string first;
  for (std::size_t t = 0; t < 300; ++t) {
    const std::size_t n = 3 + t % 2;
    const unsigned d = 3 + (t / 2) % 2;
    std::string fam;
    Polynomial f = rand_degree_form(rng, n, d, &fam);
    if (f.degree() != d) f = rand_stable_product(rng, n, d);
    const Cone k = Cone::orthant(n);
    CheckPlan plan;
    plan.seed = t;
    const Verdict clc = is_clc_sampled(f, k, plan);
    const Verdict lor = is_lorentzian_sampled(f, k, plan);
    verdicts.add(st(clc) + "/" + st(lor));
    if (contradict(clc, lor)) {
      ++contradictions;
      if (first.empty()) first = to_string(f) + " (" + fam + ")";
    }
  }
  std::ostringstream d;
  d << "300 forms, " << contradictions << " contradictions [clc/lorentzian " << verdicts.str() << "]";
  if (!first.empty()) d << "; first: " << first;
  return {contradictions == 0, d.str()};
}

Outcome criterion_9() {
  Rng rng(9);
  int disagreements = 0;
  Tally verdicts;
  std::string first;
  for (std::size_t t = 0; t < 300; ++t) {
    const std::size_t n = 3 + t % 2;
    std::string fam;
    Polynomial f = rand_degree_form(rng, n, 3, &fam);
    if (f.degree() != 3) f = rand_stable_product(rng, n, 3);
    const Cone k = Cone::orthant(n);
    CheckPlan plan;
    plan.seed = t;
    plan.samples = 2000;
    const Verdict exact = is_lorentzian_extreme_reduction(f, k, std::nullopt, plan);
    const Verdict sampled = is_lorentzian_sampled(f, k, plan);
    verdicts.add(st(exact) + "/" + st(sampled));
    if ((sampled.is_fails() && !exact.is_fails()) || (exact.is_fails() && sampled.is_holds()) ||
        (exact.is_holds() && sampled.is_fails())) {
      ++disagreements;
      if (first.empty()) first = to_string(f) + " (" + fam + ")";
    }
  }
  std::ostringstream d;
  d << "300 forms, " << disagreements << " disagreements [extreme/sampled " << verdicts.str() << "]";
  if (!first.empty()) d << "; first: " << first;
  return {disagreements == 0, d.str()};
}

Polynomial rand_quartic(Rng& rng, std::size_t n) {
  Polynomial p(n, 4);
  while (p.is_zero()) p = rand_form(rng, n, 4, -5, 5, 0.6);
  // Rational coefficients.
  Polynomial out(n, 4);
  std::uniform_int_distribution<int> den(1, 6);
  for (const auto& [m, c] : p.terms()) out.add_term(m, c / Rational(den(rng)));
  return out;
}

Outcome criterion_10() {
  std::ostringstream d;
  bool ok = true;
  for (std::size_t n = 2; n <= 5; ++n) ok = ok && phi(r_form(n)).is_zero();
  d << "phi(R)=0 for n<=5: " << (ok ? "yes" : "no");

  Rng rng(10);
  int roundtrip_bad = 0;
  for (std::size_t t = 0; t < 500; ++t) {
    const std::size_t n = 1 + t % 4;
    const Polynomial p = rand_quartic(rng, n);
    if (!(phi(canonical_preimage(p)) == p)) ++roundtrip_bad;
  }
  d << "; round-trip failures " << roundtrip_bad << "/500";

  int inertia_bad = 0;
  for (std::size_t t = 0; t < 500; ++t) {
    const std::size_t n = 2 + t % 3;
    const std::size_t big = psd_dim(n);
    const SymQuadratic m(n, rand_symmetric(rng, big, -6, 6, 1 + static_cast<int>(t % 3)));
    const auto [shifted, tt] = lorentzian_shift(m);
    const Inertia in = inertia(shifted.q.to_double());
    if (in.fragile || in.n_pos != 1 || in.n_neg != static_cast<int>(big) - 1 || in.n_zero != 0) ++inertia_bad;
  }
  d << "; shift inertia failures " << inertia_bad << "/500";

  int sos_bad = 0;
  for (std::size_t t = 0; t < 100; ++t) {
    Polynomial p(2, 4);
    const int terms = 1 + static_cast<int>(t % 3);
    for (int s = 0; s < terms; ++s) {
      const Polynomial g = rand_form(rng, 2, 2, -4, 4);
      if (!g.is_zero()) p += g * g;
    }
    if (p.is_zero()) p = parse_polynomial("x1^4 + x2^4");
    const auto [shifted, tt] = lorentzian_shift(canonical_preimage(p));
    const Verdict v = psd_lorentzian_via_quartic(shifted);
    if (!v.is_holds() || v.sampling_supported) ++sos_bad;
  }
  d << "; SOS preimages not passing " << sos_bad << "/100";
  return {ok && roundtrip_bad == 0 && inertia_bad == 0 && sos_bad == 0, d.str()};
}

Outcome criterion_11() {
  Rng rng(11);
  int failures = 0;
  int pairs = 0;
  Tally verdicts;
  std::string first;
  for (std::size_t t = 0; t < 100; ++t) {
    const std::size_t n = 3 + t % 2;
    const unsigned d = 2 + t % 3;
    const Cone k = Cone::orthant(n);
    // f = (lambda_f x_s + l_f) H and g = (lambda_g x_s + l_g) H with H free of x_s,
    // so D_b f = D_c g = H for b = e_s / lambda_f and c = e_s / lambda_g.
    const std::size_t s = t % n;
    auto free_form = [&](int lo) {
      RatVector c = rand_rat_vector(rng, n, lo, 4);
      c[s] = 0;
      c[(s + 1) % n] += 1;
      return c;
    };
    std::vector<Polynomial> hs;
    for (unsigned i = 0; i + 1 < d; ++i) hs.push_back(linear_form(free_form(0)));
    const Polynomial h = product(hs);
    const Rational lf = rand_rational(rng, 1, 3);
    const Rational lg = rand_rational(rng, 1, 3);
    RatVector cf = free_form(0);
    RatVector cg = free_form(0);
    cf[s] = lf;
    cg[s] = lg;
    const Polynomial f = linear_form(cf) * h;
    const Polynomial g = linear_form(cg) * h;
    RatVector b(n, Rational(0)), c(n, Rational(0));
    b[s] = 1 / lf;
    c[s] = 1 / lg;
    CheckPlan plan;
    plan.seed = t;
    const Verdict thm = sum_is_lorentzian(f, g, b, c, k, plan);
    const Verdict direct = is_lorentzian_sampled(f + g, k, plan);
    ++pairs;
    verdicts.add(st(thm) + "/" + st(direct));
    if (!direct.is_holds() || !thm.is_holds()) {
      ++failures;
      if (first.empty()) first = to_string(f) + " | " + to_string(g);
    }
  }
  std::ostringstream d;
  d << pairs << " pairs, " << failures << " failures [theorem/sampled " << verdicts.str() << "]";
  if (!first.empty()) d << "; first: " << first;
  return {failures == 0, d.str()};
}

Outcome criterion_12() {
  Rng rng(12);
  int bad = 0;
  double worst_quad = 0.0;
  double worst_grad = 0.0;
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (std::size_t t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + t % 5;
    const unsigned d = static_cast<unsigned>(t % 6);
    Polynomial f = rand_form(rng, n, d, -5, 5, 0.7);
    Eigen::VectorXd a(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < a.size(); ++i) a[i] = unif(rng);
    const double fa = f.evaluate(a);
    const Eigen::MatrixXd h = hessian_at(f, a);
    const Eigen::VectorXd g = gradient_at(f, a);
    const double dd = d;
    const double e1 = std::abs(a.dot(h * a) - dd * (dd - 1) * fa) / ((1 + std::abs(fa)) * std::max(1.0, dd * dd));
    const double e2 = (h * a - (dd - 1) * g).norm() / ((1 + g.norm()) * std::max(1.0, dd * dd));
    worst_quad = std::max(worst_quad, e1);
    worst_grad = std::max(worst_grad, e2);
    if (e1 > 1e-9 || e2 > 1e-9) ++bad;
  }
  std::ostringstream d;
  d << "1000 (f, a) pairs, " << bad << " violations; worst relative errors " << worst_quad << ", " << worst_grad;
  return {bad == 0, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::pair<int, std::function<Outcome()>>> all{
      {1, criterion_1},  {2, criterion_2},  {3, criterion_3},   {4, criterion_4},
      {5, criterion_5},  {6, criterion_6},  {7, criterion_7},   {8, criterion_8},
      {9, criterion_9},  {10, criterion_10}, {11, criterion_11}, {12, criterion_12}};
  // Runtime limits in seconds.
  const std::map<int, double> limits{{1, 5.0}, {4, 60.0}, {10, 120.0}};
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& [id, fn] : all) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (const auto it = limits.find(id); it != limits.end() && secs >= it->second) {
      o.pass = false;
      o.detail += "; runtime limit " + std::to_string(it->second) + "s exceeded";
    }
    std::printf("criterion %2d %s (%.2fs): %s\n", id, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed;
}
