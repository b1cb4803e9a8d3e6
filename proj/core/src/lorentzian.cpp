#include "klorentz/lorentzian.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "klorentz/errors.hpp"
#include "klorentz/sampling.hpp"

namespace klorentz {

std::string_view to_string(PositivityPath p) {
  switch (p) {
    case PositivityPath::DualMap: return "dual_map";
    case PositivityPath::ExtremePairs: return "extreme_pairs";
    case PositivityPath::InteriorValues: return "interior_values";
    case PositivityPath::DefinitionSampled: return "definition_sampled";
  }
  return "unknown";
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::DefinitionSampled: return "definition_sampled";
    case Method::ExtremeReduction: return "extreme_reduction";
    case Method::ClcSampled: return "clc_sampled";
    case Method::SocSLemma: return "soc_slemma";
    case Method::OrthantExact: return "orthant_exact";
  }
  return "unknown";
}

namespace {

constexpr double kNudges[] = {1e-2, 1e-4, 1e-6};
constexpr int kAlternations = 40;
// Share of fragile samples a sampled check tolerates before giving up.
constexpr double kMaxSkippedShare = 0.01;

Eigen::VectorXd unit(const Eigen::VectorXd& v) { return v / v.norm(); }

double pair_value(const Eigen::MatrixXd& q, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  return y.dot(q * x) / (x.norm() * y.norm());
}

// Fails outcomes are confirmed at twice the tolerance; unconfirmed ones turn
// Inconclusive.
Status confirm_nonneg(double value, double tau, const TolerancePolicy& tol) {
  const Status st = at_least_zero(value, tau, tol);
  if (st != Status::Fails) return st;
  return at_least_zero(value, 2.0 * tau, tol) == Status::Fails ? Status::Fails : Status::Inconclusive;
}

Verdict nonneg_verdict(double value, double tau, const TolerancePolicy& tol, std::string method, bool sampled,
                       Witness w) {
  switch (confirm_nonneg(value, tau, tol)) {
    case Status::Holds: return Verdict::holds(std::move(method), sampled);
    case Status::Inconclusive:
      return Verdict::inconclusive(std::move(method), "smallest value " + std::to_string(value) +
                                                          " inside fragility band",
                                   sampled);
    case Status::Fails: break;
  }
  return Verdict::fails(std::move(method), std::move(w), sampled);
}

// --- signature gate ----------------------------------------------------------

struct Gate {
  Status status = Status::Holds;
  Verdict verdict;  // set unless status == Holds
  SpectralDecomp spec;
  double norm = 0.0;
  double tau = 0.0;
  bool psd_rank_one = false;    // robustly no negative eigenvalue
  bool maybe_negative = false;  // some negative eigenvalue in the fragility band
  int n_zero = 0;
};

Gate signature_gate(const Eigen::MatrixXd& q, const TolerancePolicy& tol, const std::string& method) {
  Gate g;
  g.spec = spectral(q);
  const Eigen::VectorXd& ev = g.spec.eigenvalues;
  g.norm = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
  g.tau = tol.tau(g.norm);
  const double hi = g.tau * tol.band;
  const double lo = g.tau / tol.band;
  int robust_pos = 0;
  int possible_pos = 0;
  int robust_neg = 0;
  int possible_neg = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] >= hi) ++robust_pos;
    if (ev[i] > lo) ++possible_pos;
    if (ev[i] <= -hi) ++robust_neg;
    if (ev[i] < -lo) ++possible_neg;
    if (std::abs(ev[i]) <= g.tau) ++g.n_zero;
  }
  g.psd_rank_one = possible_neg == 0;
  g.maybe_negative = possible_neg > robust_neg;
  if (robust_pos >= 2) {
    g.status = Status::Fails;
    Witness w{"eigenvectors", {g.spec.eigenvectors.col(0), g.spec.eigenvectors.col(1)}, {ev[0], ev[1]},
              "two positive eigenvalues"};
    g.verdict = Verdict::fails(method, std::move(w));
  } else if (possible_pos == 0) {
    g.status = Status::Fails;
    Witness w{"eigenvectors", {g.spec.eigenvectors.col(0)}, {ev.size() ? ev[0] : 0.0}, "no positive eigenvalue"};
    g.verdict = Verdict::fails(method, std::move(w));
  } else if (robust_pos != 1 || possible_pos != 1) {
    g.status = Status::Inconclusive;
    g.verdict = Verdict::inconclusive(method, "positive eigenvalue count is fragile");
  }
  return g;
}

// --- pair searches -------------------------------------------------------------

struct Pair {
  double value = INFINITY;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
};

std::vector<Eigen::VectorXd> unit_finite_rays(const Cone& k) {
  std::vector<Eigen::VectorXd> out;
  for (const auto& r : finite_extreme_rays(k)) out.push_back(unit(to_double(r)));
  return out;
}

Pair finite_ray_pairs(const Eigen::MatrixXd& q, const std::vector<Eigen::VectorXd>& rays) {
  Pair best;
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (std::size_t j = i; j < rays.size(); ++j) {
      const double v = pair_value(q, rays[i], rays[j]);
      if (v < best.value) best = {v, rays[i], rays[j]};
    }
  }
  return best;
}

// Best-response descent on y^T Q x over pairs of extreme rays.
Pair alternating_pairs(const Eigen::MatrixXd& q, const Cone& k, std::size_t starts, Rng& rng) {
  Pair best;
  for (std::size_t s = 0; s < starts; ++s) {
    Eigen::VectorXd x = sample_extreme_ray(k, rng);
    Eigen::VectorXd y = min_pairing_ray(k, q * x).ray;
    double v = pair_value(q, x, y);
    for (int it = 0; it < kAlternations; ++it) {
      Eigen::VectorXd x2 = min_pairing_ray(k, q * y).ray;
      Eigen::VectorXd y2 = min_pairing_ray(k, q * x2).ray;
      const double v2 = pair_value(q, x2, y2);
      if (!(v2 < v - 1e-15)) break;
      x = std::move(x2);
      y = std::move(y2);
      v = v2;
    }
    if (v < best.value) best = {v, x, y};
  }
  return best;
}

Pair ray_pair_search(const Eigen::MatrixXd& q, const Cone& k, std::size_t budget, Rng& rng) {
  if (k.has_finite_extreme_rays()) return finite_ray_pairs(q, unit_finite_rays(k));
  return alternating_pairs(q, k, std::max<std::size_t>(4, budget / 32), rng);
}

// --- positivity paths ----------------------------------------------------------

struct QuadInput {
  Eigen::MatrixXd q;
  const RatMatrix* exact = nullptr;
};

Verdict dual_map_path(const QuadInput& in, const Cone& k, const Gate& gate, const CheckPlan& plan) {
  const std::string method = "dual_map";
  if (k.has_finite_extreme_rays() && in.exact != nullptr) {
    // Q g must lie in the Euclidean dual: <h, Q g> >= 0 for all rays g, h.
    const std::vector<RatVector> rays = finite_extreme_rays(k);
    for (const auto& g : rays) {
      const RatVector qg = (*in.exact) * g;
      for (const auto& h : rays) {
        const Rational v = dot(h, qg);
        if (v < 0) {
          Witness w{"pair", {to_double(g), to_double(h)}, {v.get_d()}, "extreme ray x with Q x outside the dual cone"};
          return Verdict::fails(method, std::move(w));
        }
      }
    }
    return Verdict::holds(method);
  }
  if (k.has_finite_extreme_rays()) {
    const Pair p = finite_ray_pairs(in.q, unit_finite_rays(k));
    return nonneg_verdict(p.value, gate.tau, plan.tol, method, false,
                          Witness{"pair", {p.x, p.y}, {p.value}, "extreme ray x with Q x outside the dual cone"});
  }
  // Continuous ray sets: search the ray x whose image W^{-1} Q x is least inside K.
  const Eigen::VectorXd winv = metric_weights(k).cwiseInverse();
  const double scale = std::max(gate.norm, 1e-300);
  auto objective = [&](const Eigen::VectorXd& x) {
    const Eigen::VectorXd z = winv.asDiagonal() * (in.q * x);
    const double nz = z.norm();
    if (nz == 0.0) return 0.0;
    return membership_margin(k, z, plan.tol).value * nz / (scale * x.norm());
  };
  Rng rng(plan.seed);
  const RayMinimum worst = minimize_over_rays(k, objective, plan.samples, rng);
  const Eigen::VectorXd image = winv.asDiagonal() * (in.q * worst.ray);
  const Verdict dual = dual_contains(k, image, plan.tol);
  const double value = worst.value * scale;
  const RayMinimum y = min_pairing_ray(k, in.q * worst.ray);
  Witness w{"pair", {worst.ray, y.ray}, {pair_value(in.q, worst.ray, y.ray)},
            "extreme ray x with Q x outside the dual cone (" + std::string(to_string(dual.status)) + ")"};
  return nonneg_verdict(value, gate.tau, plan.tol, method, true, std::move(w));
}

Verdict extreme_pairs_path(const QuadInput& in, const Cone& k, const Gate& gate, const CheckPlan& plan) {
  Rng rng(plan.seed);
  const Pair p = ray_pair_search(in.q, k, plan.samples, rng);
  return nonneg_verdict(p.value, gate.tau, plan.tol, "extreme_pairs", !k.has_finite_extreme_rays(),
                        Witness{"pair", {p.x, p.y}, {p.value}, "extreme rays x, y with y^T Q x < 0"});
}

// Rank-one PSD forms q = lambda <u, x>^2 are positive on int K iff u or -u lies in
// the Euclidean dual; otherwise q vanishes at an interior point.
std::optional<Verdict> rank_one_probe(const Eigen::MatrixXd& q, const Cone& k, const Gate& gate,
                                      const TolerancePolicy& tol, const std::string& method) {
  if (!gate.psd_rank_one) return std::nullopt;
  const Eigen::VectorXd u = gate.spec.eigenvectors.col(0);
  const RayMinimum lo = min_pairing_ray(k, u);
  const RayMinimum hi = min_pairing_ray(k, Eigen::VectorXd(-u));
  const double tau = tol.tau(1.0);
  const Status plus = at_least_zero(lo.value / lo.ray.norm(), tau, tol);
  const Status minus = at_least_zero(hi.value / hi.ray.norm(), tau, tol);
  if (plus == Status::Holds || minus == Status::Holds) return std::nullopt;
  if (plus == Status::Inconclusive || minus == Status::Inconclusive) {
    return Verdict::inconclusive(method, "rank-one form with a fragile sign pattern on the cone", true);
  }
  // lo.ray pairs negatively with u, hi.ray positively; mix with the interior point.
  const Eigen::VectorXd rn = unit(lo.ray);
  const Eigen::VectorXd rp = unit(hi.ray);
  const Eigen::VectorXd p = unit(interior_point(k));
  const double eps = 1e-3;
  const double alpha = -(u.dot(rn) + eps * u.dot(p)) / u.dot(rp);
  Eigen::VectorXd x = alpha * rp + rn + eps * p;
  if (!(alpha > 0.0)) x = rn + rp + eps * p;
  x = unit(x);
  const double value = x.dot(q * x);
  return Verdict::fails(method, Witness{"point", {x}, {value}, "interior point where the rank-one form vanishes"},
                        true);
}

Verdict interior_values_path(const QuadInput& in, const Cone& k, const Gate& gate, const CheckPlan& plan) {
  const std::string method = "interior_values";
  if (auto probe = rank_one_probe(in.q, k, gate, plan.tol, method)) return *probe;
  Rng rng(plan.seed);
  InteriorSampler sampler(k);
  double best = INFINITY;
  Eigen::VectorXd best_x;
  auto consider = [&](const Eigen::VectorXd& x) {
    const double v = x.dot(in.q * x) / x.squaredNorm();
    if (v < best) {
      best = v;
      best_x = x;
    }
  };
  for (std::size_t i = 0; i < plan.samples; ++i) consider(sampler(rng));
  // Minimize q on segments between ray pairs, then step inside.
  std::vector<Pair> pairs;
  if (k.has_finite_extreme_rays()) {
    const auto rays = unit_finite_rays(k);
    for (std::size_t i = 0; i < rays.size(); ++i) {
      for (std::size_t j = i; j < rays.size(); ++j) pairs.push_back({0.0, rays[i], rays[j]});
    }
  } else {
    const std::size_t starts = std::max<std::size_t>(4, plan.samples / 32);
    for (std::size_t s = 0; s < starts; ++s) pairs.push_back(alternating_pairs(in.q, k, 1, rng));
  }
  for (const Pair& pr : pairs) {
    const Eigen::VectorXd x = unit(pr.x);
    const Eigen::VectorXd y = unit(pr.y);
    const double a = x.dot(in.q * x);
    const double b = y.dot(in.q * x);
    const double c = y.dot(in.q * y);
    // q(t x + (1-t) y) = t^2 a + 2 t (1-t) b + (1-t)^2 c on [0, 1].
    const double curv = a - 2.0 * b + c;
    double t = 0.5;
    if (curv > 0.0) t = std::clamp((c - b) / curv, 0.0, 1.0);
    const double cands[] = {t, 0.0, 1.0};
    for (double s : cands) {
      const Eigen::VectorXd z = s * x + (1.0 - s) * y;
      if (z.norm() == 0.0) continue;
      for (double delta : kNudges) consider(nudge_inward(k, z, delta));
    }
  }
  return nonneg_verdict(best, gate.tau, plan.tol, method, true,
                        Witness{"point", {best_x}, {best}, "interior point with q(x) < 0"});
}

Verdict definition_path(const QuadInput& in, const Cone& k, const Gate& gate, const CheckPlan& plan) {
  const std::string method = "definition_sampled";
  Rng rng(plan.seed);
  InteriorSampler sampler(k);
  Pair best;
  auto consider = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const double v = pair_value(in.q, x, y);
    if (v < best.value) best = {v, x, y};
  };
  for (std::size_t i = 0; i < plan.samples; ++i) {
    const Eigen::VectorXd x = sampler(rng);
    consider(x, sampler(rng));
  }
  const Pair rays = ray_pair_search(in.q, k, plan.samples, rng);
  for (double delta : kNudges) consider(nudge_inward(k, rays.x, delta), nudge_inward(k, rays.y, delta));
  if (k.has_finite_extreme_rays()) {
    // The worst pair of rays is exact; also probe every pair near its limit.
    const auto all = unit_finite_rays(k);
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i; j < all.size(); ++j) {
        consider(nudge_inward(k, all[i], kNudges[0]), nudge_inward(k, all[j], kNudges[0]));
      }
    }
  }
  return nonneg_verdict(best.value, gate.tau, plan.tol, method, true,
                        Witness{"pair", {best.x, best.y}, {best.value}, "interior points x, y with y^T Q x <= 0"});
}

Verdict quad_check(const QuadInput& in, const Cone& k, const CheckPlan& plan) {
  if (static_cast<std::size_t>(in.q.rows()) != k.dim() || in.q.rows() != in.q.cols()) {
    throw DimensionError("quad_is_lorentzian: form has " + std::to_string(in.q.rows()) + " variables, cone " +
                         k.name() + " has dimension " + std::to_string(k.dim()));
  }
  if (plan.samples == 0) throw PreconditionError("quad_is_lorentzian: plan has no samples");
  const bool zero = in.exact ? in.exact->is_zero() : in.q.cwiseAbs().maxCoeff() == 0.0;
  if (zero) return Verdict::holds("zero_form", false, "the zero form is K-Lorentzian");

  const std::string path(to_string(plan.positivity));
  Gate gate = signature_gate(in.q, plan.tol, "signature");
  if (gate.status != Status::Holds) return gate.verdict;

  switch (plan.positivity) {
    case PositivityPath::DualMap: return dual_map_path(in, k, gate, plan);
    case PositivityPath::ExtremePairs: return extreme_pairs_path(in, k, gate, plan);
    case PositivityPath::InteriorValues: return interior_values_path(in, k, gate, plan);
    case PositivityPath::DefinitionSampled: return definition_path(in, k, gate, plan);
  }
  return Verdict::inconclusive(path, "unknown positivity path");
}

// --- log-concavity -----------------------------------------------------------

template <class C>
Verdict log_concave_impl(const BasicPolynomial<C>& f, const Eigen::VectorXd& a, bool strict,
                         const TolerancePolicy& tol) {
  const std::string method = strict ? "strictly_log_concave" : "log_concave";
  if (static_cast<std::size_t>(a.size()) != f.num_vars()) throw DimensionError("is_log_concave_at: point has wrong length");
  if (f.is_zero()) {
    if (!strict) return Verdict::holds(method, false, "zero form");
    return Verdict::fails(method, Witness{"point", {a}, {0.0}, "zero form is not strictly log-concave"});
  }
  const double fa = static_cast<double>(detail::to_double(f.evaluate(a)));
  const double scale = f.coefficient_l1() * std::pow(std::max(1.0, a.cwiseAbs().maxCoeff()), f.degree());
  if (!(fa > tol.tau(scale))) {
    throw PreconditionError("is_log_concave_at: f(a) = " + std::to_string(fa) + " is not positive");
  }
  const unsigned d = f.degree();
  if (d == 0) {
    if (!strict || a.size() == 0) return Verdict::holds(method);
    return Verdict::fails(method, Witness{"point", {a}, {0.0}, "constant form: log f has zero Hessian"});
  }
  if (d == 1) {
    // Hessian of log f is -grad grad^T / f^2, rank one.
    if (!strict || a.size() == 1) return Verdict::holds(method);
    return Verdict::fails(method, Witness{"point", {a}, {0.0}, "linear form: log f has a singular Hessian"});
  }

  const Eigen::MatrixXd h = hessian_at(f, a);
  Gate gate = signature_gate(h, tol, method);
  const Status sig = gate.status;
  Verdict rank1 = rank1_update_nsd(h, a, 1.0, tol);
  const Eigen::VectorXd ha = h * a;
  Verdict plane = nsd_on_hyperplane(h, ha, false, tol);
  if (sig == Status::Inconclusive || rank1.is_inconclusive() || plane.is_inconclusive()) {
    return Verdict::inconclusive(method, "log-concavity criteria are fragile at this point");
  }
  if (sig != rank1.status || sig != plane.status) {
    return Verdict::inconclusive(method, "signature, rank-one and hyperplane criteria disagree");
  }
  if (sig == Status::Fails) {
    Verdict v = gate.verdict;
    v.method = method;
    return v;
  }
  if (!strict) return Verdict::holds(method);

  Verdict strict_plane = nsd_on_hyperplane(h, ha, true, tol);
  if (strict_plane.is_inconclusive()) return Verdict::inconclusive(method, "strict hyperplane test is fragile");
  if (gate.n_zero > 0 && strict_plane.is_holds()) {
    return Verdict::inconclusive(method, "singular Hessian but definite on the hyperplane");
  }
  if (strict_plane.is_fails()) {
    strict_plane.method = method;
    return strict_plane;
  }
  return Verdict::holds(method);
}

// --- degree <= 1 -----------------------------------------------------------------

Verdict low_degree_nonneg(const Polynomial& f, const Cone& k, bool strict, const TolerancePolicy& tol,
                          const std::string& method) {
  const std::size_t n = f.num_vars();
  if (f.degree() == 0) {
    const Rational c = f.coefficient(Monomial::one(n));
    if (c > 0 || (!strict && c == 0)) return Verdict::holds(method);
    return Verdict::fails(method, Witness{"point", {interior_point(k)}, {c.get_d()}, "constant is not positive"});
  }
  // Linear form c.x: nonnegative on K iff c lies in the Euclidean dual.
  RatVector c(n, Rational(0));
  for (const auto& [m, coef] : f.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (m[i] == 1) c[i] = coef;
    }
  }
  if (k.has_finite_extreme_rays()) {
    for (const auto& r : finite_extreme_rays(k)) {
      const Rational v = dot(c, r);
      if (v < 0 || (strict && v == 0)) {
        return Verdict::fails(method, Witness{"point", {to_double(r)}, {v.get_d()},
                                              strict ? "extreme ray where the form is not positive"
                                                     : "extreme ray where the form is negative"});
      }
    }
    return Verdict::holds(method);
  }
  const Eigen::VectorXd cd = to_double(c);
  const RayMinimum m = min_pairing_ray(k, cd);
  const double value = m.value / m.ray.norm();
  const double tau = tol.tau(cd.norm());
  const Status st = strict ? above_zero(value, tau, tol) : confirm_nonneg(value, tau, tol);
  if (st == Status::Holds) return Verdict::holds(method);
  if (st == Status::Inconclusive) return Verdict::inconclusive(method, "minimum over rays inside fragility band");
  return Verdict::fails(method, Witness{"point", {m.ray}, {value}, "extreme ray minimizing the linear form"});
}

void check_form(const Polynomial& f, const Cone& k, const char* what) {
  if (f.num_vars() != k.dim()) {
    throw DimensionError(std::string(what) + ": form has " + std::to_string(f.num_vars()) + " variables, cone " +
                         k.name() + " has dimension " + std::to_string(k.dim()));
  }
}

CheckPlan inner_plan(const CheckPlan& plan, std::uint64_t salt, PositivityPath path) {
  CheckPlan p = plan;
  p.positivity = path;
  p.samples = plan.inner_samples;
  p.seed = plan.seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1));
  return p;
}

Verdict sampled_summary(const std::string& method, std::size_t skipped, std::size_t total) {
  const std::string detail = std::to_string(total) + " samples, " + std::to_string(skipped) + " fragile samples skipped";
  if (static_cast<double>(skipped) > kMaxSkippedShare * static_cast<double>(total)) {
    return Verdict::inconclusive(method, detail, true);
  }
  return Verdict::holds(method, true, detail);
}

std::string chain_label(const Cone& k, const RatVector& v) {
  if (k.kind() == ConeKind::Orthant) {
    int nonzero = 0;
    std::size_t idx = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != 0) {
        ++nonzero;
        idx = i;
      }
    }
    if (nonzero == 1 && v[idx] == 1) return "e" + std::to_string(idx + 1);
  }
  if (k.kind() == ConeKind::Polyhedral) {
    for (std::size_t g = 0; g < k.generators().size(); ++g) {
      if (k.generators()[g] == v) return "g" + std::to_string(g + 1);
    }
  }
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

}  // namespace

// ---------------------------------------------------------------------------

Verdict quad_is_lorentzian(const QuadraticForm& q, const Cone& k, const CheckPlan& plan) {
  return quad_check({q.matrix_double(), &q.matrix()}, k, plan);
}

Verdict quad_is_lorentzian(const Eigen::MatrixXd& q, const Cone& k, const CheckPlan& plan) {
  return quad_check({0.5 * (q + q.transpose()), nullptr}, k, plan);
}

Verdict quad_extreme_value_test(const QuadraticForm& q, const Cone& k, const CheckPlan& plan) {
  if (q.num_vars() != k.dim()) throw DimensionError("quad_extreme_value_test: form and cone dimensions differ");
  if (!k.extreme_rays_path_connected()) {
    throw HypothesisError("quad_extreme_value_test: extreme rays of " + k.name() + " are not path-connected");
  }
  const std::string method = "extreme_values";
  const Eigen::MatrixXd qd = q.matrix_double();
  const Inertia in = inertia(qd, plan.tol);
  if (in.fragile) return Verdict::inconclusive(method, "inertia is fragile");
  if (in.n_pos != 1 || in.n_zero != 0) {
    throw HypothesisError("quad_extreme_value_test: hypothesis violated, inertia is (" + std::to_string(in.n_pos) +
                          "," + std::to_string(in.n_neg) + "," + std::to_string(in.n_zero) + ")");
  }
  Rng rng(plan.seed);
  auto objective = [&](const Eigen::VectorXd& r) { return r.dot(qd * r) / r.squaredNorm(); };
  const RayMinimum m = minimize_over_rays(k, objective, plan.samples, rng);
  return nonneg_verdict(m.value, in.tau, plan.tol, method, true,
                        Witness{"point", {m.ray}, {m.value}, "extreme ray with q(v) < 0"});
}

SocCertificate quad_soc_certificate(const QuadraticForm& q, const TolerancePolicy& tol) {
  const std::size_t n = q.num_vars();
  if (n == 0) throw DimensionError("quad_soc_certificate: empty form");
  const std::string method = "soc_slemma";
  const Cone k = Cone::second_order(n);
  const Eigen::MatrixXd qd = q.matrix_double();
  SocCertificate out;
  if (q.matrix().is_zero()) {
    out.verdict = Verdict::holds(method, false, "zero form");
    out.lambda = 0.0;
    return out;
  }
  Eigen::MatrixXd b = -Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  b(0, 0) = 1.0;
  auto phi = [&](double lam) { return spectral(qd - lam * b).eigenvalues.tail(1)[0]; };

  const double qnorm = spectral_norm(qd);
  const double tau = tol.tau(qnorm);
  // phi is concave; its maximum over lambda >= 0 lies in [0, 2 ||Q||].
  double lo = 0.0;
  double hi = 2.0 * qnorm;
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - golden * (hi - lo);
  double x2 = lo + golden * (hi - lo);
  double f1 = phi(x1);
  double f2 = phi(x2);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, qnorm); ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + golden * (hi - lo);
      f2 = phi(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - golden * (hi - lo);
      f1 = phi(x1);
    }
  }
  double lam_star = 0.5 * (lo + hi);
  double phi_star = phi(lam_star);
  if (const double p0 = phi(0.0); p0 >= phi_star) {
    lam_star = 0.0;
    phi_star = p0;
  }
  out.min_eigenvalue = phi_star;

  const Status feasible = at_least_zero(phi_star, tau, tol);
  if (feasible == Status::Inconclusive) {
    out.verdict = Verdict::inconclusive(method, "best S-lemma multiplier is inside the fragility band");
    return out;
  }
  if (feasible == Status::Fails) {
    // Eigenvector of the minimal eigenvalue at the optimum lies in +-L_n and has q < 0.
    const SpectralDecomp s = spectral(qd - lam_star * b);
    Eigen::VectorXd v = s.eigenvectors.col(s.eigenvectors.cols() - 1);
    if (v[0] < 0) v = -v;
    std::vector<Eigen::VectorXd> cands{v, Eigen::VectorXd::Unit(static_cast<Eigen::Index>(n), 0)};
    if (n >= 3) {
      Rng rng(42);
      cands.push_back(minimize_over_rays(k, [&](const Eigen::VectorXd& r) { return r.dot(qd * r) / r.squaredNorm(); },
                                         256, rng)
                          .ray);
    } else {
      for (const auto& r : finite_extreme_rays(k)) cands.push_back(to_double(r));
    }
    double best = INFINITY;
    Eigen::VectorXd best_x;
    for (const auto& c : cands) {
      if (!contains(k, c, tol).is_holds()) continue;
      const double val = c.dot(qd * c) / c.squaredNorm();
      if (val < best) {
        best = val;
        best_x = c;
      }
    }
    if (confirm_nonneg(best, tau, tol) != Status::Fails) {
      out.verdict = Verdict::inconclusive(method, "no multiplier found but no negative point confirmed");
      return out;
    }
    out.verdict = Verdict::fails(method, Witness{"point", {best_x}, {best}, "point of L_n with q(x) < 0"});
    return out;
  }

  Gate gate = signature_gate(qd, tol, method);
  if (gate.status != Status::Holds) {
    out.verdict = gate.verdict;
    out.lambda = lam_star;
    return out;
  }

  // Right end of the feasible interval.
  double a = lam_star;
  double c = 2.0 * qnorm;
  if (phi(c) >= -tau) {
    a = c;
  } else {
    for (int it = 0; it < 200 && c - a > 1e-15 * std::max(1.0, qnorm); ++it) {
      const double mid = 0.5 * (a + c);
      if (phi(mid) >= -tau) {
        a = mid;
      } else {
        c = mid;
      }
    }
  }
  const double lam_right = a;
  if (lam_right > tau * tol.band) {
    double cert = lam_star;
    if (cert <= tau * tol.band) cert = 0.5 * lam_right;
    out.lambda = cert;
    out.min_eigenvalue = phi(cert);
    out.verdict = Verdict::holds(method, false, "lambda = " + std::to_string(cert));
    return out;
  }

  // Only lambda = 0: Q is positive semidefinite of rank one, q = <v, x>^2.
  out.lambda = 0.0;
  const Eigen::VectorXd v = std::sqrt(std::max(0.0, gate.spec.eigenvalues[0])) * gate.spec.eigenvectors.col(0);
  const Verdict plus = contains(k, v, tol);
  const Verdict minus = contains(k, Eigen::VectorXd(-v), tol);
  if (plus.is_holds() || minus.is_holds()) {
    out.verdict = Verdict::holds(method, false, "q = <v,x>^2 with v in +-L_n");
    return out;
  }
  if (plus.is_inconclusive() || minus.is_inconclusive()) {
    out.verdict = Verdict::inconclusive(method, "rank-one form with v near the cone boundary");
    return out;
  }
  const Eigen::VectorXd w = v.tail(static_cast<Eigen::Index>(n) - 1);
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  x[0] = 1.0;
  x.tail(static_cast<Eigen::Index>(n) - 1) = -v[0] * w / w.squaredNorm();
  out.verdict = Verdict::fails(method, Witness{"point", {x, v}, {x.dot(qd * x)},
                                               "interior point of L_n orthogonal to v; v itself is outside +-L_n"});
  return out;
}

Verdict is_log_concave_at(const Polynomial& f, const Eigen::VectorXd& a, bool strict, const TolerancePolicy& tol) {
  return log_concave_impl(f, a, strict, tol);
}

Verdict is_log_concave_at(const PolynomialD& f, const Eigen::VectorXd& a, bool strict, const TolerancePolicy& tol) {
  return log_concave_impl(f, a, strict, tol);
}

Verdict is_lorentzian_sampled(const Polynomial& f, const Cone& k, const CheckPlan& plan) {
  check_form(f, k, "is_lorentzian_sampled");
  if (plan.samples == 0) throw PreconditionError("is_lorentzian_sampled: plan has no samples");
  const std::string method = "definition_sampled";
  if (f.degree() <= 1) return low_degree_nonneg(f, k, false, plan.tol, "nonnegative_on_cone");
  if (f.is_zero()) return Verdict::holds(method, false, "zero form");
  if (f.degree() == 2) {
    CheckPlan p = plan;
    p.positivity = PositivityPath::DefinitionSampled;
    return quad_is_lorentzian(as_quadratic(f), k, p);
  }

  const PolynomialD fd = f.cast<double>();
  const unsigned m = f.degree() - 2;
  InteriorSampler sampler(k);
  const Eigen::VectorXd center = unit(interior_point(k));
  Rng rng(plan.seed);
  std::size_t skipped = 0;
  for (std::size_t t = 0; t < plan.samples; ++t) {
    std::vector<Eigen::VectorXd> tuple;
    for (unsigned i = 0; i < m; ++i) tuple.push_back(t == 0 ? center : sampler(rng));
    const PolynomialD q = derivative_chain(fd, tuple);
    if (q.is_zero()) continue;
    const Verdict v = quad_is_lorentzian(quadratic_matrix(q), k,
                                         inner_plan(plan, t, PositivityPath::DefinitionSampled));
    if (v.is_inconclusive()) {
      ++skipped;
      continue;
    }
    if (v.is_fails()) {
      Witness w{"tuple", tuple, v.witness->values,
                "derived quadratic D_{a_1}...D_{a_" + std::to_string(m) + "} f fails (" + v.method + "): " +
                    v.witness->note};
      for (const auto& x : v.witness->vectors) w.vectors.push_back(x);
      return Verdict::fails(method, std::move(w), true,
                            "tuple " + std::to_string(t) + "; first " + std::to_string(m) +
                                " vectors are the directions, the rest belong to the quadratic witness");
    }
  }
  return sampled_summary(method, skipped, plan.samples);
}

Verdict is_lorentzian_extreme_reduction(const Polynomial& f, const Cone& k, const std::optional<RatVector>& a_opt,
                                        const CheckPlan& plan) {
  check_form(f, k, "is_lorentzian_extreme_reduction");
  const std::string method = "extreme_reduction";
  if (f.degree() <= 1) return low_degree_nonneg(f, k, false, plan.tol, "nonnegative_on_cone");
  const RatVector a = a_opt ? *a_opt : interior_point_rational(k);
  if (a.size() != k.dim()) throw DimensionError("is_lorentzian_extreme_reduction: interior point has wrong length");
  if (!in_interior(k, to_double(a), plan.tol).is_holds()) {
    throw PreconditionError("is_lorentzian_extreme_reduction: a is not in the interior of " + k.name());
  }
  if (f.is_zero()) return Verdict::holds(method, false, "zero form");

  const unsigned top = f.degree() - 2;
  const bool sampled = !k.has_finite_extreme_rays();
  std::vector<RatVector> rays;
  Rng rng(plan.seed);
  if (sampled) {
    const std::size_t budget = top == 0 ? 0 : std::max<std::size_t>(1, plan.samples / (4 * top));
    for (const auto& r : extreme_rays(k, budget, rng)) rays.push_back(to_rational(r));
  } else {
    rays = finite_extreme_rays(k);
  }

  // D_a^j f for j = 0..top.
  std::vector<Polynomial> powers{f};
  for (unsigned j = 0; j < top; ++j) powers.push_back(directional_derivative(powers.back(), a));

  CheckPlan qplan = plan;
  qplan.positivity = PositivityPath::DualMap;
  qplan.samples = sampled ? std::max<std::size_t>(plan.inner_samples, 64) : plan.samples;
  std::size_t inconclusive = 0;
  std::size_t tested = 0;
  std::optional<Verdict> failure;
  std::vector<std::size_t> idx;


  for (unsigned kk = 0; kk <= top && !failure; ++kk) {
    const Polynomial& base = powers[top - kk];
    // Depth-first over non-decreasing ray index sequences.
    std::function<void(const Polynomial&, std::size_t, unsigned)> rec = [&](const Polynomial& g, std::size_t from,
                                                                          unsigned left) {
      if (failure) return;
      if (left == 0) {
        ++tested;
        if (g.is_zero()) return;
        const Verdict v = quad_is_lorentzian(as_quadratic(g), k, qplan);
        if (v.is_inconclusive()) {
          ++inconclusive;
          return;
        }
        if (v.is_holds()) return;
        std::string chain;
        std::vector<Eigen::VectorXd> dirs;
        for (std::size_t i : idx) {
          chain += "D_" + chain_label(k, rays[i]) + " ";
          dirs.push_back(to_double(rays[i]));
        }
        const unsigned apow = top - kk;
        if (apow > 0) chain += "D_a^" + std::to_string(apow) + " ";
        chain += "f";
        dirs.push_back(to_double(a));
        Witness w{"derivative_chain", dirs, v.witness ? v.witness->values : std::vector<double>{},
                  "k=" + std::to_string(kk) + ": " + chain + " is not K-Lorentzian (" + v.method + ": " +
                      (v.witness ? v.witness->note : v.detail) + ")"};
        if (v.witness) {
          for (const auto& x : v.witness->vectors) w.vectors.push_back(x);
        }
        failure = Verdict::fails(method, std::move(w), sampled,
                                 "vectors: the " + std::to_string(kk) + " ray directions, then a, then the quadratic witness");
        return;
      }
      for (std::size_t i = from; i < rays.size() && !failure; ++i) {
        idx.push_back(i);
        rec(directional_derivative(g, rays[i]), i, left - 1);
        idx.pop_back();
      }
    };
    rec(base, 0, kk);
  }
  if (failure) return *failure;
  const std::string detail = std::to_string(tested) + " derived quadratics, " + std::to_string(inconclusive) +
                             " inconclusive";
  if (inconclusive > 0) return Verdict::inconclusive(method, detail, sampled);
  return Verdict::holds(method, sampled, detail);
}

Verdict is_clc_sampled(const Polynomial& f, const Cone& k, const CheckPlan& plan) {
  check_form(f, k, "is_clc_sampled");
  if (plan.samples == 0) throw PreconditionError("is_clc_sampled: plan has no samples");
  const std::string method = "clc_sampled";
  if (f.is_zero()) return Verdict::holds(method, false, "zero form");
  const unsigned d = f.degree();
  if (d <= 1) return low_degree_nonneg(f, k, false, plan.tol, method);

  const PolynomialD fd = f.cast<double>();
  const InteriorSampler sampler(k);
  const Eigen::VectorXd center = unit(interior_point(k));
  Rng rng(plan.seed);
  std::bernoulli_distribution coin(0.5);
  std::size_t skipped = 0;

  auto direction = [&](std::size_t t) -> Eigen::VectorXd {
    if (t <= d) return center;
    return coin(rng) ? sample_extreme_ray(k, rng) : sampler(rng);
  };
  auto fail = [&](std::vector<Eigen::VectorXd> vecs, std::vector<double> values, std::string note) {
    return Verdict::fails(method, Witness{"clc_point", std::move(vecs), std::move(values), std::move(note)}, true,
                          "vectors: directions a_1..a_m, then the evaluation point");
  };

  for (std::size_t t = 0; t < plan.samples; ++t) {
    const unsigned m = static_cast<unsigned>(t % (d + 1));
    const unsigned deg = d - m;
    if (deg >= 2) {
      std::vector<Eigen::VectorXd> dirs;
      for (unsigned i = 0; i < m; ++i) dirs.push_back(direction(t));
      const PolynomialD g = derivative_chain(fd, dirs);
      if (g.is_zero()) continue;
      const double tau = plan.tol.tau(g.coefficient_l1());
      Eigen::VectorXd x = t <= d ? center : sampler(rng);
      double gx = g.evaluate(x);
      // Points where g is tiny but not negative carry no information; redraw.
      for (int retry = 0; retry < 4 && gx >= 0.0 && gx <= tau * plan.tol.band; ++retry) {
        x = sampler(rng);
        gx = g.evaluate(x);
      }
      if (gx <= tau * plan.tol.band) {
        if (confirm_nonneg(gx, tau, plan.tol) == Status::Fails) {
          dirs.push_back(x);
          return fail(std::move(dirs), {static_cast<double>(m), gx}, "derivative is negative at an interior point");
        }
        ++skipped;
        continue;
      }
      const Verdict v = is_log_concave_at(g, x, false, plan.tol);
      if (v.is_inconclusive()) {
        ++skipped;
      } else if (v.is_fails()) {
        dirs.push_back(x);
        std::vector<double> vals{static_cast<double>(m)};
        vals.insert(vals.end(), v.witness->values.begin(), v.witness->values.end());
        return fail(std::move(dirs), std::move(vals), "derivative is not log-concave at x: " + v.witness->note);
      }
      continue;
    }

    // deg 1 or 0: the last one or two directions and the point are chosen by
    // best response on the bilinear form of the quadratic h = D_{a_1..a_{d-2}} f.
    std::vector<Eigen::VectorXd> dirs;
    for (unsigned i = 0; i + 2 < d; ++i) dirs.push_back(direction(t));
    const PolynomialD h = derivative_chain(fd, dirs);
    if (h.is_zero()) continue;
    const Eigen::MatrixXd q = quadratic_matrix(h);
    const double tau = plan.tol.tau(spectral_norm(q));
    Eigen::VectorXd y = t <= d ? center : sample_extreme_ray(k, rng);
    Eigen::VectorXd x = center;
    double best = INFINITY;
    Eigen::VectorXd bx;
    Eigen::VectorXd by;
    for (int it = 0; it < 8; ++it) {
      const Eigen::VectorXd ray = min_pairing_ray(k, q * y).ray;
      // deg 1 evaluates at an interior point; deg 0 may use the ray itself.
      const double deltas_closed[] = {0.0};
      const double* begin = deg == 0 ? deltas_closed : kNudges;
      const double* end = deg == 0 ? deltas_closed + 1 : kNudges + 3;
      for (const double* dp = begin; dp != end; ++dp) {
        Eigen::VectorXd cand = *dp == 0.0 ? unit(ray) : nudge_inward(k, ray, *dp);
        const double v = 2.0 * pair_value(q, cand, y);
        if (v < best) {
          best = v;
          bx = cand;
          by = y;
        }
      }
      x = bx;
      y = min_pairing_ray(k, q * x).ray;
    }
    const Status st = confirm_nonneg(best, tau, plan.tol);
    if (st == Status::Inconclusive) {
      ++skipped;
    } else if (st == Status::Fails) {
      dirs.push_back(by);
      if (deg == 0) dirs.push_back(bx);
      dirs.push_back(bx);
      return fail(std::move(dirs), {static_cast<double>(m), best},
                  deg == 0 ? "D_{a_1}...D_{a_d} f is negative" : "linear derivative is negative at an interior point");
    }
  }
  return sampled_summary(method, skipped, plan.samples);
}

Verdict in_interior_sl(const Polynomial& f, const Cone& k, const CheckPlan& plan) {
  check_form(f, k, "in_interior_sl");
  if (plan.samples == 0) throw PreconditionError("in_interior_sl: plan has no samples");
  const std::string method = "interior_sl";
  if (f.degree() <= 1) return low_degree_nonneg(f, k, true, plan.tol, method);
  if (f.is_zero()) return Verdict::fails(method, Witness{"point", {interior_point(k)}, {0.0}, "zero form"});

  const PolynomialD fd = f.cast<double>();
  const unsigned m = f.degree() - 2;
  const InteriorSampler sampler(k);
  const Eigen::VectorXd center = unit(interior_point(k));
  Rng rng(plan.seed);
  std::bernoulli_distribution coin(0.5);
  std::size_t skipped = 0;
  const std::size_t tuples = m == 0 ? 1 : plan.samples;
  for (std::size_t t = 0; t < tuples; ++t) {
    std::vector<Eigen::VectorXd> tuple;
    for (unsigned i = 0; i < m; ++i) {
      tuple.push_back(t == 0 ? center : (coin(rng) ? sample_extreme_ray(k, rng) : sampler(rng)));
    }
    const Eigen::MatrixXd q = quadratic_matrix(derivative_chain(fd, tuple));
    auto fail = [&](Witness w) {
      std::vector<Eigen::VectorXd> vecs = tuple;
      vecs.insert(vecs.end(), w.vectors.begin(), w.vectors.end());
      w.vectors = std::move(vecs);
      return Verdict::fails(method, std::move(w), true, "vectors: the tuple from K, then the quadratic witness");
    };
    if (q.cwiseAbs().maxCoeff() == 0.0) {
      return fail(Witness{"tuple", {}, {0.0}, "derived quadratic vanishes identically"});
    }
    Gate gate = signature_gate(q, plan.tol, method);
    if (gate.status == Status::Inconclusive) {
      ++skipped;
      continue;
    }
    if (gate.status == Status::Fails) return fail(*gate.verdict.witness);
    const Eigen::VectorXd& ev = gate.spec.eigenvalues;
    const double smallest = ev.cwiseAbs().minCoeff();
    if (smallest <= gate.tau) {
      Eigen::Index i = 0;
      ev.cwiseAbs().minCoeff(&i);
      return fail(Witness{"eigenvectors", {gate.spec.eigenvectors.col(i)}, {ev[i]}, "derived quadratic is singular"});
    }
    if (plan.tol.fragile(smallest, gate.tau)) {
      ++skipped;
      continue;
    }
    const Pair p = ray_pair_search(q, k, plan.inner_samples, rng);
    const Status st = above_zero(p.value, gate.tau, plan.tol);
    if (st == Status::Inconclusive) {
      ++skipped;
    } else if (st == Status::Fails) {
      return fail(Witness{"pair", {p.x, p.y}, {p.value}, "points x, y of K with y^T Q x not positive"});
    }
  }
  return sampled_summary(method, skipped, tuples);
}

Verdict sum_is_lorentzian(const Polynomial& f, const Polynomial& g, const RatVector& b, const RatVector& c,
                          const Cone& k, const CheckPlan& plan) {
  check_form(f, k, "sum_is_lorentzian");
  check_form(g, k, "sum_is_lorentzian");
  const std::string method = "sum_theorem";
  if (f.degree() != g.degree()) throw PreconditionError("sum_is_lorentzian: forms have different degrees");
  if (f.degree() == 0) throw PreconditionError("sum_is_lorentzian: forms must have positive degree");
  if (b.size() != k.dim() || c.size() != k.dim()) throw DimensionError("sum_is_lorentzian: b or c has wrong length");
  if (!contains(k, to_double(b), plan.tol).is_holds()) throw PreconditionError("sum_is_lorentzian: b is not in K");
  if (!contains(k, to_double(c), plan.tol).is_holds()) throw PreconditionError("sum_is_lorentzian: c is not in K");

  for (const Polynomial* p : {&f, &g}) {
    const Verdict v = is_lorentzian_sampled(*p, k, plan);
    if (v.is_fails()) throw PreconditionError("sum_is_lorentzian: a summand is not K-Lorentzian");
    if (v.is_inconclusive()) return Verdict::inconclusive(method, "summand check inconclusive: " + v.detail, true);
  }
  const Polynomial dbf = directional_derivative(f, b);
  const Polynomial dcg = directional_derivative(g, c);
  if (dbf.is_zero() || dcg.is_zero()) {
    return Verdict::inconclusive(method, "D_b f or D_c g vanishes identically; the theorem does not apply");
  }
  if (!(dbf == dcg)) return Verdict::inconclusive(method, "D_b f differs from D_c g; the theorem does not apply");

  const Verdict cross = is_lorentzian_sampled(f + g, k, plan);
  if (cross.is_fails()) {
    return Verdict::inconclusive(method, "identity holds but sampling found a counterexample for f + g", true);
  }
  return Verdict::holds(method, true, "D_b f = D_c g = " + to_string(dbf) + "; sampling cross-check " +
                                          std::string(to_string(cross.status)));
}

Verdict check_lorentzian(const Polynomial& f, const Cone& k, const CheckPlan& plan) {
  switch (plan.method) {
    case Method::DefinitionSampled: return is_lorentzian_sampled(f, k, plan);
    case Method::ExtremeReduction: return is_lorentzian_extreme_reduction(f, k, std::nullopt, plan);
    case Method::ClcSampled: return is_clc_sampled(f, k, plan);
    case Method::OrthantExact:
      if (k.kind() != ConeKind::Orthant) throw PreconditionError("orthant_exact needs an orthant cone");
      return is_lorentzian_extreme_reduction(f, k, std::nullopt, plan);
    case Method::SocSLemma:
      if (k.kind() != ConeKind::SecondOrder || f.degree() != 2) {
        throw PreconditionError("soc_slemma applies to quadratics on a second-order cone");
      }
      return quad_soc_certificate(as_quadratic(f), plan.tol).verdict;
  }
  throw PreconditionError("unknown method");
}

}  // namespace klorentz
