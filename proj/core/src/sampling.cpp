#include "klorentz/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "klorentz/errors.hpp"
#include "klorentz/linalg.hpp"

namespace klorentz {

namespace {

constexpr std::size_t kRefineStarts = 4;
constexpr int kRefineIterations = 200;

std::vector<double> dirichlet(std::size_t m, double alpha, Rng& rng) {
  std::gamma_distribution<double> gamma(alpha, 1.0);
  std::vector<double> w(m);
  double total = 0.0;
  for (auto& x : w) {
    x = gamma(rng);
    total += x;
  }
  if (total <= 0.0) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(m));
    return w;
  }
  for (auto& x : w) x /= total;
  return w;
}

}  // namespace

InteriorSampler::InteriorSampler(const Cone& k, double min_offset)
    : cone_(&k), min_offset_(min_offset), center_(interior_point(k)) {
  if (!(min_offset > 0.0 && min_offset <= 0.3)) throw PreconditionError("InteriorSampler: min_offset must lie in (0, 0.3]");
  center_ /= center_.norm();
  if (k.has_finite_extreme_rays()) {
    for (const auto& r : finite_extreme_rays(k)) {
      Eigen::VectorXd v = to_double(r);
      finite_rays_.push_back(v / v.norm());
    }
  }
}

Eigen::VectorXd InteriorSampler::combination(double alpha, Rng& rng) const {
  const Cone& k = *cone_;
  const std::size_t m = finite_rays_.empty() ? k.dim() + 1 : finite_rays_.size();
  const std::vector<double> w = dirichlet(m, alpha, rng);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k.dim()));
  for (std::size_t i = 0; i < m; ++i) {
    Eigen::VectorXd r = finite_rays_.empty() ? sample_extreme_ray(k, rng) : finite_rays_[i];
    x += w[i] * r / r.norm();
  }
  return x;
}

Eigen::VectorXd InteriorSampler::operator()(Rng& rng) const {
  std::uniform_int_distribution<int> mode(0, 2);
  Eigen::VectorXd x;
  switch (mode(rng)) {
    case 0: x = combination(1.0, rng); break;
    case 1: x = combination(0.2, rng); break;
    default: x = sample_extreme_ray(*cone_, rng); break;
  }
  std::uniform_real_distribution<double> log_delta(std::log(min_offset_), std::log(0.3));
  const double delta = std::exp(log_delta(rng));
  const double nx = x.norm();
  if (nx > 0.0) x /= nx;
  x += delta * center_;
  return x / x.norm();
}

Eigen::VectorXd nudge_inward(const Cone& k, const Eigen::VectorXd& x, double delta) {
  Eigen::VectorXd p = interior_point(k);
  Eigen::VectorXd y = x / x.norm() + delta * p / p.norm();
  return y / y.norm();
}

RayMinimum minimize_over_rays(const Cone& k, const std::function<double(const Eigen::VectorXd&)>& objective,
                              std::size_t budget, Rng& rng) {
  RayMinimum best{INFINITY, {}};
  if (k.has_finite_extreme_rays()) {
    for (const auto& r : finite_extreme_rays(k)) {
      Eigen::VectorXd v = to_double(r);
      v /= v.norm();
      const double val = objective(v);
      if (val < best.value) best = {val, v};
    }
    return best;
  }

  const std::size_t pd = ray_parameter_dim(k);
  auto f = [&](const Eigen::VectorXd& u) { return objective(ray_from_parameter(k, u)); };

  std::vector<std::pair<double, Eigen::VectorXd>> starts;
  starts.reserve(std::max<std::size_t>(budget, 1));
  for (std::size_t i = 0; i < std::max<std::size_t>(budget, 1); ++i) {
    Eigen::VectorXd u = sample_unit_sphere(pd, rng);
    starts.emplace_back(f(u), std::move(u));
  }
  const std::size_t keep = std::min(kRefineStarts, starts.size());
  std::partial_sort(starts.begin(), starts.begin() + static_cast<std::ptrdiff_t>(keep), starts.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });

  for (std::size_t s = 0; s < keep; ++s) {
    Eigen::VectorXd u = starts[s].second;
    double fu = starts[s].first;
    double step = 0.1;
    for (int it = 0; it < kRefineIterations && step > 1e-13; ++it) {
      // Central differences on the sphere, projected to the tangent space.
      Eigen::VectorXd g(u.size());
      const double h = 1e-6;
      for (Eigen::Index i = 0; i < u.size(); ++i) {
        Eigen::VectorXd up = u;
        Eigen::VectorXd dn = u;
        up[i] += h;
        dn[i] -= h;
        g[i] = (f(up) - f(dn)) / (2.0 * h);
      }
      g -= g.dot(u) * u;
      const double gn = g.norm();
      if (gn < 1e-14) break;
      bool improved = false;
      while (step > 1e-13) {
        Eigen::VectorXd trial = u - step * g / gn;
        trial /= trial.norm();
        const double ft = f(trial);
        if (ft < fu) {
          u = trial;
          fu = ft;
          step *= 1.5;
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) break;
    }
    if (fu < best.value) best = {fu, ray_from_parameter(k, u)};
  }
  return best;
}

RayMinimum min_pairing_ray(const Cone& k, const Eigen::VectorXd& z) {
  if (static_cast<std::size_t>(z.size()) != k.dim()) throw DimensionError("min_pairing_ray: length mismatch");
  if (k.has_finite_extreme_rays()) {
    RayMinimum best{INFINITY, {}};
    for (const auto& r : finite_extreme_rays(k)) {
      Eigen::VectorXd v = to_double(r);
      v /= v.norm();
      const double val = v.dot(z);
      if (val < best.value) best = {val, v};
    }
    return best;
  }
  if (k.kind() == ConeKind::SecondOrder) {
    const Eigen::VectorXd rest = z.tail(z.size() - 1);
    const double nr = rest.norm();
    Eigen::VectorXd u = nr > 0.0 ? Eigen::VectorXd(-rest / nr) : Eigen::VectorXd::Unit(rest.size(), 0);
    return {z[0] - nr, ray_from_parameter(k, u)};
  }
  // PSD: <svec(v v^T), z> = v^T Zt v with Zt holding z_ii on the diagonal and z_ij / 2 off it.
  const std::size_t n = k.side();
  Eigen::MatrixXd zt = smat(z, n);
  for (Eigen::Index i = 0; i < zt.rows(); ++i) {
    for (Eigen::Index j = 0; j < zt.cols(); ++j) {
      if (i != j) zt(i, j) *= 0.5;
    }
  }
  const SpectralDecomp s = spectral(zt);
  const Eigen::Index last = s.eigenvalues.size() - 1;
  return {s.eigenvalues[last], ray_from_parameter(k, s.eigenvectors.col(last))};
}

}  // namespace klorentz
