#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

#include "klorentz/cone.hpp"

namespace klorentz {

/// Seeded sampler for points of int K.
///
/// Each draw mixes three shapes: a Dirichlet(1) combination of extreme rays, a
/// sparse Dirichlet(0.2) combination, or a single ray. A multiple delta of the
/// normalized interior point is then added, with delta log-uniform in
/// [min_offset, 0.3], and the result is scaled to unit norm.
class InteriorSampler {
 public:
  explicit InteriorSampler(const Cone& k, double min_offset = 1e-3);

  Eigen::VectorXd operator()(Rng& rng) const;

 private:
  Eigen::VectorXd combination(double alpha, Rng& rng) const;

  const Cone* cone_;
  double min_offset_;
  Eigen::VectorXd center_;
  std::vector<Eigen::VectorXd> finite_rays_;
};

/// Moves a (boundary) point towards the interior: x/|x| + delta * p/|p|, normalized.
Eigen::VectorXd nudge_inward(const Cone& k, const Eigen::VectorXd& x, double delta);

struct RayMinimum {
  double value = 0.0;
  Eigen::VectorXd ray;
};

/// Minimizes `objective` over extreme rays. Finite ray sets are enumerated;
/// otherwise `budget` sphere parameters are sampled and the best few refined by
/// projected gradient descent.
RayMinimum minimize_over_rays(const Cone& k, const std::function<double(const Eigen::VectorXd&)>& objective,
                              std::size_t budget, Rng& rng);

/// Exact minimum of <r, z> (Euclidean) over the rays r produced by
/// finite_extreme_rays (scaled to unit norm) or ray_from_parameter.
RayMinimum min_pairing_ray(const Cone& k, const Eigen::VectorXd& z);

}  // namespace klorentz
