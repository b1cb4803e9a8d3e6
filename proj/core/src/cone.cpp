#include "klorentz/cone.hpp"

#include <algorithm>
#include <cmath>

#include "klorentz/errors.hpp"
#include "klorentz/linalg.hpp"

namespace klorentz {

std::string_view to_string(ConeKind k) {
  switch (k) {
    case ConeKind::Orthant: return "orthant";
    case ConeKind::SecondOrder: return "soc";
    case ConeKind::PSD: return "psd";
    case ConeKind::Polyhedral: return "polyhedral";
  }
  return "unknown";
}

namespace {

// True if a = s * b for some rational s > 0.
bool positive_multiple(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) return false;
  Rational scale = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] == 0) != (b[i] == 0)) return false;
    if (a[i] == 0) continue;
    Rational s = a[i] / b[i];
    if (s <= 0) return false;
    if (scale == 0) {
      scale = s;
    } else if (s != scale) {
      return false;
    }
  }
  return scale != 0;
}

bool sets_match_up_to_scaling(const std::vector<RatVector>& a, const std::vector<RatVector>& b) {
  auto covered = [](const std::vector<RatVector>& from, const std::vector<RatVector>& to) {
    return std::all_of(from.begin(), from.end(), [&](const RatVector& g) {
      return std::any_of(to.begin(), to.end(), [&](const RatVector& h) { return positive_multiple(g, h); });
    });
  };
  return covered(a, b) && covered(b, a);
}

void check_dim(const Cone& k, Eigen::Index n, const char* what) {
  if (static_cast<std::size_t>(n) != k.dim()) {
    throw DimensionError(std::string(what) + ": vector has length " + std::to_string(n) + ", cone " +
                         k.name() + " has dimension " + std::to_string(k.dim()));
  }
}

Verdict verdict_from(Status st, const char* method, const Eigen::VectorXd& x, double value,
                     const char* note) {
  switch (st) {
    case Status::Holds: return Verdict::holds(method);
    case Status::Inconclusive:
      return Verdict::inconclusive(method, "margin " + std::to_string(value) + " inside fragility band");
    case Status::Fails: break;
  }
  return Verdict::fails(method, Witness{"point", {x}, {value}, note});
}

}  // namespace

Cone Cone::orthant(std::size_t n) {
  if (n == 0) throw DimensionError("orthant: dimension must be positive");
  Cone c;
  c.kind_ = ConeKind::Orthant;
  c.dim_ = c.side_ = n;
  return c;
}

Cone Cone::second_order(std::size_t n) {
  if (n == 0) throw DimensionError("second-order cone: dimension must be positive");
  Cone c;
  c.kind_ = ConeKind::SecondOrder;
  c.dim_ = c.side_ = n;
  return c;
}

Cone Cone::psd(std::size_t side) {
  if (side == 0) throw DimensionError("psd cone: matrix side must be positive");
  Cone c;
  c.kind_ = ConeKind::PSD;
  c.side_ = side;
  c.dim_ = psd_dim(side);
  return c;
}

Cone Cone::polyhedral(std::vector<RatVector> generators, std::vector<RatVector> dual_generators) {
  if (generators.empty() || dual_generators.empty()) {
    throw PreconditionError("polyhedral cone needs generators and dual generators");
  }
  const std::size_t n = generators.front().size();
  if (n == 0) throw DimensionError("polyhedral cone: zero-length generator");
  for (const auto& g : generators) {
    if (g.size() != n) throw DimensionError("polyhedral cone: generators of different lengths");
  }
  for (const auto& h : dual_generators) {
    if (h.size() != n) throw DimensionError("polyhedral cone: dual generator length differs from generators");
  }
  for (std::size_t i = 0; i < generators.size(); ++i) {
    for (std::size_t j = 0; j < dual_generators.size(); ++j) {
      if (dot(generators[i], dual_generators[j]) < 0) {
        throw PreconditionError("polyhedral cone: generator " + std::to_string(i) +
                                " pairs negatively with dual generator " + std::to_string(j));
      }
    }
  }
  if (rank(generators, n) != n) throw PreconditionError("polyhedral cone is not solid (generators do not span)");
  if (rank(dual_generators, n) != n) {
    throw PreconditionError("polyhedral cone is not pointed (dual generators do not span)");
  }

  Cone c;
  c.kind_ = ConeKind::Polyhedral;
  c.dim_ = c.side_ = n;
  c.self_dual_ = sets_match_up_to_scaling(generators, dual_generators);
  c.generators_ = std::move(generators);
  c.dual_generators_ = std::move(dual_generators);
  if (!in_interior(c, interior_point(c)).is_holds()) {
    throw PreconditionError("polyhedral cone is degenerate: generator sum lies on the boundary");
  }
  return c;
}

bool Cone::extreme_rays_path_connected() const {
  switch (kind_) {
    case ConeKind::SecondOrder: return dim_ >= 3;
    case ConeKind::PSD: return side_ >= 2;
    default: return false;
  }
}

bool Cone::has_finite_extreme_rays() const { return !extreme_rays_path_connected(); }

std::string Cone::name() const {
  const std::size_t n = kind_ == ConeKind::PSD ? side_ : dim_;
  return std::string(to_string(kind_)) + ":" + std::to_string(n);
}

// ---------------------------------------------------------------------------

std::size_t psd_dim(std::size_t side) { return side * (side + 1) / 2; }

std::size_t psd_index(std::size_t side, std::size_t i, std::size_t j) {
  if (i >= side || j >= side) throw DimensionError("psd_index: entry out of range");
  if (i == j) return i;
  if (i > j) std::swap(i, j);
  // Off-diagonal block, row-major over i < j.
  std::size_t idx = side;
  for (std::size_t r = 0; r < i; ++r) idx += side - 1 - r;
  return idx + (j - i - 1);
}

Eigen::VectorXd svec(const Eigen::MatrixXd& x) {
  if (x.rows() != x.cols()) throw DimensionError("svec: matrix must be square");
  const auto n = static_cast<std::size_t>(x.rows());
  Eigen::VectorXd v(static_cast<Eigen::Index>(psd_dim(n)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const auto a = static_cast<Eigen::Index>(i);
      const auto b = static_cast<Eigen::Index>(j);
      v[static_cast<Eigen::Index>(psd_index(n, i, j))] = 0.5 * (x(a, b) + x(b, a));
    }
  }
  return v;
}

Eigen::MatrixXd smat(const Eigen::VectorXd& x, std::size_t side) {
  if (static_cast<std::size_t>(x.size()) != psd_dim(side)) throw DimensionError("smat: wrong coordinate count");
  const auto n = static_cast<Eigen::Index>(side);
  Eigen::MatrixXd m(n, n);
  for (std::size_t i = 0; i < side; ++i) {
    for (std::size_t j = i; j < side; ++j) {
      const double v = x[static_cast<Eigen::Index>(psd_index(side, i, j))];
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
      m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = v;
    }
  }
  return m;
}

Eigen::VectorXd metric_weights(const Cone& k) {
  Eigen::VectorXd w = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(k.dim()));
  if (k.kind() == ConeKind::PSD) w.tail(static_cast<Eigen::Index>(k.dim() - k.side())).setConstant(2.0);
  return w;
}

RatVector metric_weights_rational(const Cone& k) {
  RatVector w(k.dim(), Rational(1));
  if (k.kind() == ConeKind::PSD) {
    for (std::size_t i = k.side(); i < k.dim(); ++i) w[i] = 2;
  }
  return w;
}

// ---------------------------------------------------------------------------

Margin membership_margin(const Cone& k, const Eigen::VectorXd& x_in, const TolerancePolicy& tol) {
  check_dim(k, x_in.size(), "membership");
  if (!x_in.allFinite()) throw std::domain_error("membership: non-finite coordinate");
  const double norm = x_in.norm();
  Margin m{0.0, tol.tau(1.0)};
  if (norm == 0.0) return m;
  const Eigen::VectorXd x = x_in / norm;
  switch (k.kind()) {
    case ConeKind::Orthant:
      m.value = x.minCoeff();
      break;
    case ConeKind::SecondOrder: {
      const double rest = x.tail(x.size() - 1).squaredNorm();
      m.value = std::min(x[0], x[0] * x[0] - rest);
      break;
    }
    case ConeKind::PSD: {
      const SpectralDecomp s = spectral(smat(x, k.side()));
      const double norm2 = s.eigenvalues.cwiseAbs().maxCoeff();
      m.value = s.eigenvalues[s.eigenvalues.size() - 1];
      m.tau = tol.tau_rel * (1.0 + norm2);
      break;
    }
    case ConeKind::Polyhedral: {
      m.value = INFINITY;
      for (const auto& h : k.dual_generators()) {
        const Eigen::VectorXd hd = to_double(h);
        m.value = std::min(m.value, hd.dot(x) / hd.norm());
      }
      break;
    }
  }
  return m;
}

Verdict contains(const Cone& k, const Eigen::VectorXd& x, const TolerancePolicy& tol) {
  const Margin m = membership_margin(k, x, tol);
  return verdict_from(at_least_zero(m.value, m.tau, tol), "contains", x, m.value,
                      "point outside the cone; value is its normalized margin");
}

Verdict contains(const Cone& k, const Eigen::MatrixXd& x, const TolerancePolicy& tol) {
  if (k.kind() != ConeKind::PSD) throw DimensionError("matrix input is only accepted for psd cones");
  if (static_cast<std::size_t>(x.rows()) != k.side()) throw DimensionError("contains: matrix side mismatch");
  return contains(k, svec(x), tol);
}

Verdict in_interior(const Cone& k, const Eigen::VectorXd& x, const TolerancePolicy& tol) {
  const Margin m = membership_margin(k, x, tol);
  if (x.norm() == 0.0) {
    return Verdict::fails("in_interior", Witness{"point", {x}, {0.0}, "zero vector is never interior"});
  }
  return verdict_from(above_zero(m.value, m.tau, tol), "in_interior", x, m.value,
                      "point not in the interior; value is its normalized margin");
}

Verdict dual_contains(const Cone& k, const Eigen::VectorXd& y, const TolerancePolicy& tol) {
  if (k.kind() != ConeKind::Polyhedral) {
    Verdict v = contains(k, y, tol);
    v.method = "dual_contains";
    return v;
  }
  check_dim(k, y.size(), "dual_contains");
  const double ny = y.norm();
  if (ny == 0.0) return Verdict::holds("dual_contains");
  double worst = INFINITY;
  for (const auto& g : k.generators()) {
    const Eigen::VectorXd gd = to_double(g);
    worst = std::min(worst, gd.dot(y) / (gd.norm() * ny));
  }
  return verdict_from(at_least_zero(worst, tol.tau(1.0), tol), "dual_contains", y, worst,
                      "vector pairs negatively with a generator");
}

Eigen::VectorXd interior_point(const Cone& k) {
  const auto n = static_cast<Eigen::Index>(k.dim());
  switch (k.kind()) {
    case ConeKind::Orthant: return Eigen::VectorXd::Ones(n);
    case ConeKind::SecondOrder: return Eigen::VectorXd::Unit(n, 0);
    case ConeKind::PSD:
      return svec(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(k.side()), static_cast<Eigen::Index>(k.side())));
    case ConeKind::Polyhedral: {
      Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
      for (const auto& g : k.generators()) {
        const Eigen::VectorXd gd = to_double(g);
        p += gd / gd.norm();
      }
      return p;
    }
  }
  return {};
}

RatVector interior_point_rational(const Cone& k) {
  RatVector p(k.dim(), Rational(0));
  switch (k.kind()) {
    case ConeKind::Orthant:
      std::fill(p.begin(), p.end(), Rational(1));
      break;
    case ConeKind::SecondOrder:
      p[0] = 1;
      break;
    case ConeKind::PSD:
      for (std::size_t i = 0; i < k.side(); ++i) p[i] = 1;
      break;
    case ConeKind::Polyhedral:
      for (const auto& g : k.generators()) {
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += g[i];
      }
      break;
  }
  return p;
}

// ---------------------------------------------------------------------------

std::vector<RatVector> finite_extreme_rays(const Cone& k) {
  if (!k.has_finite_extreme_rays()) {
    throw PreconditionError("cone " + k.name() + " has a continuum of extreme rays");
  }
  std::vector<RatVector> rays;
  switch (k.kind()) {
    case ConeKind::Orthant:
      for (std::size_t i = 0; i < k.dim(); ++i) {
        RatVector e(k.dim(), Rational(0));
        e[i] = 1;
        rays.push_back(std::move(e));
      }
      break;
    case ConeKind::Polyhedral:
      rays = k.generators();
      break;
    case ConeKind::SecondOrder:
      if (k.dim() == 1) {
        rays.push_back({Rational(1)});
      } else {
        rays.push_back({Rational(1), Rational(1)});
        rays.push_back({Rational(1), Rational(-1)});
      }
      break;
    case ConeKind::PSD:
      rays.push_back({Rational(1)});
      break;
  }
  return rays;
}

std::size_t ray_parameter_dim(const Cone& k) {
  if (k.has_finite_extreme_rays()) return 0;
  return k.kind() == ConeKind::SecondOrder ? k.dim() - 1 : k.side();
}

Eigen::VectorXd ray_from_parameter(const Cone& k, const Eigen::VectorXd& u) {
  const std::size_t pd = ray_parameter_dim(k);
  if (pd == 0) throw PreconditionError("ray_from_parameter: cone " + k.name() + " has finitely many rays");
  if (static_cast<std::size_t>(u.size()) != pd) throw DimensionError("ray_from_parameter: wrong parameter length");
  const double nu = u.norm();
  if (nu == 0.0) throw PreconditionError("ray_from_parameter: zero parameter");
  const Eigen::VectorXd v = u / nu;
  if (k.kind() == ConeKind::SecondOrder) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(k.dim()));
    r[0] = 1.0;
    r.tail(v.size()) = v;
    return r;
  }
  return svec(v * v.transpose());
}

Eigen::VectorXd sample_unit_sphere(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
  do {
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = normal(rng);
  } while (v.norm() < 1e-12);
  return v / v.norm();
}

Eigen::VectorXd sample_extreme_ray(const Cone& k, Rng& rng) {
  if (k.has_finite_extreme_rays()) {
    const auto rays = finite_extreme_rays(k);
    std::uniform_int_distribution<std::size_t> pick(0, rays.size() - 1);
    return to_double(rays[pick(rng)]);
  }
  return ray_from_parameter(k, sample_unit_sphere(ray_parameter_dim(k), rng));
}

std::vector<Eigen::VectorXd> extreme_rays(const Cone& k, std::size_t budget, Rng& rng) {
  std::vector<Eigen::VectorXd> out;
  if (k.has_finite_extreme_rays()) {
    for (const auto& r : finite_extreme_rays(k)) out.push_back(to_double(r));
    return out;
  }
  out.reserve(budget);
  for (std::size_t i = 0; i < budget; ++i) out.push_back(sample_extreme_ray(k, rng));
  return out;
}

}  // namespace klorentz
