#include "klorentz/matrix_maps.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Eigenvalues>

#include "klorentz/errors.hpp"
#include "klorentz/linalg.hpp"
#include "klorentz/sampling.hpp"

namespace klorentz {

std::string_view to_string(EigenLocation loc) {
  switch (loc) {
    case EigenLocation::Interior: return "interior";
    case EigenLocation::Boundary: return "boundary";
    case EigenLocation::Outside: return "outside";
  }
  return "unknown";
}

namespace {

void check_shape(std::size_t rows, std::size_t cols, const Cone& k, const char* what) {
  if (rows != cols) throw DimensionError(std::string(what) + ": matrix must be square");
  if (rows != k.dim()) {
    throw DimensionError(std::string(what) + ": matrix is " + std::to_string(rows) + "x" + std::to_string(cols) +
                         " but cone " + k.name() + " has dimension " + std::to_string(k.dim()));
  }
}

bool finite_exact(const Cone& k) {
  return k.kind() == ConeKind::Orthant || k.kind() == ConeKind::Polyhedral || k.has_finite_extreme_rays();
}

// Exact test of A g against every dual generator h (or coordinate for orthant-like
// cones). strict: h^T A g > 0.
Verdict exact_map_test(const RatMatrix& a, const Cone& k, bool strict, const char* method) {
  const std::vector<RatVector> rays = finite_extreme_rays(k);
  std::vector<RatVector> duals;
  if (k.kind() == ConeKind::Polyhedral) {
    duals = k.dual_generators();
  } else if (k.kind() == ConeKind::Orthant) {
    duals = rays;
  } else {
    // SOC(1), SOC(2), PSD(1): self-dual with the same finite rays.
    duals = rays;
  }
  for (const auto& g : rays) {
    const RatVector ag = a * g;
    for (const auto& h : duals) {
      const Rational v = dot(h, ag);
      if (v < 0 || (strict && v == 0)) {
        Witness w{"ray_image", {to_double(g), to_double(ag)}, {v.get_d()},
                  strict ? "extreme ray whose image is not in the interior"
                         : "extreme ray whose image leaves the cone"};
        return Verdict::fails(method, std::move(w));
      }
    }
  }
  return Verdict::holds(method);
}

Verdict sampled_map_test(const Eigen::MatrixXd& a, const Cone& k, bool strict, const MapCheck& check,
                         const char* method) {
  Rng rng(check.seed);
  auto objective = [&](const Eigen::VectorXd& r) {
    return membership_margin(k, a * r, check.tol).value;
  };
  const RayMinimum worst = minimize_over_rays(k, objective, check.budget, rng);
  const Eigen::VectorXd image = a * worst.ray;
  const Margin m = membership_margin(k, image, check.tol);
  Status st = strict ? above_zero(m.value, m.tau, check.tol) : at_least_zero(m.value, m.tau, check.tol);
  if (strict && image.norm() == 0.0) st = Status::Fails;
  if (st == Status::Holds) return Verdict::holds(method, true, "checked on sampled extreme rays");
  if (st == Status::Inconclusive) {
    return Verdict::inconclusive(method, "image margin " + std::to_string(m.value) + " inside fragility band", true);
  }
  Witness w{"ray_image", {worst.ray, image}, {m.value},
            strict ? "extreme ray whose image is not in the interior" : "extreme ray whose image leaves the cone"};
  return Verdict::fails(method, std::move(w), true);
}

// --- eigenvectors ----------------------------------------------------------

struct RealEigen {
  double value;
  Eigen::VectorXd vector;
};

std::vector<RealEigen> real_eigenpairs(const Eigen::MatrixXd& a, const Cone& k, bool& complete) {
  complete = true;
  std::vector<RealEigen> out;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const Eigen::VectorXd w = metric_weights(k);
  const Eigen::MatrixXd wa = w.asDiagonal() * a;
  if ((wa - wa.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale) {
    // Self-adjoint in the cone metric: S = W^{1/2} A W^{-1/2} is symmetric.
    const Eigen::VectorXd sq = w.cwiseSqrt();
    Eigen::MatrixXd s = sq.asDiagonal() * a * sq.cwiseInverse().asDiagonal();
    s = 0.5 * (s + s.transpose());
    const SpectralDecomp d = spectral(s);
    for (Eigen::Index i = 0; i < d.eigenvalues.size(); ++i) {
      Eigen::VectorXd v = sq.cwiseInverse().asDiagonal() * d.eigenvectors.col(i);
      out.push_back({d.eigenvalues[i], v / v.norm()});
    }
    return out;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) {
    complete = false;
    return out;
  }
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const std::complex<double> lam = es.eigenvalues()[i];
    if (std::abs(lam.imag()) > 1e-10 * scale) continue;
    Eigen::VectorXcd vc = es.eigenvectors().col(i);
    // Rotate the complex phase so the largest component is real.
    Eigen::Index imax = 0;
    vc.cwiseAbs().maxCoeff(&imax);
    vc *= std::conj(vc[imax]) / std::abs(vc[imax]);
    Eigen::VectorXd v = vc.real();
    if (vc.imag().norm() > 1e-8 * v.norm()) continue;
    out.push_back({lam.real(), v / v.norm()});
  }
  return out;
}

EigenLocation locate(const Cone& k, const Eigen::VectorXd& v, const TolerancePolicy& tol, bool& fragile) {
  const Verdict in = in_interior(k, v, tol);
  if (in.is_holds()) return EigenLocation::Interior;
  const Verdict c = contains(k, v, tol);
  if (in.is_inconclusive() || c.is_inconclusive()) fragile = true;
  if (c.is_holds()) return EigenLocation::Boundary;
  return EigenLocation::Outside;
}

// Moves from v (in K) along w inside the eigenspace until the cone boundary.
std::optional<Eigen::VectorXd> boundary_in_span(const Cone& k, const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                                                const TolerancePolicy& tol) {
  for (double sign : {1.0, -1.0}) {
    double lo = 0.0;
    double hi = 1.0;
    while (hi < 1e6 && contains(k, Eigen::VectorXd(v + sign * hi * w), tol).is_holds()) hi *= 2.0;
    if (hi >= 1e6) continue;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (contains(k, Eigen::VectorXd(v + sign * mid * w), tol).is_holds()) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    Eigen::VectorXd b = v + sign * lo * w;
    return Eigen::VectorXd(b / b.norm());
  }
  return std::nullopt;
}

}  // namespace

Verdict is_k_nonnegative(const RatMatrix& a, const Cone& k, const MapCheck& check) {
  check_shape(a.rows(), a.cols(), k, "is_k_nonnegative");
  if (finite_exact(k)) return exact_map_test(a, k, false, "k_nonnegative_exact");
  return sampled_map_test(a.to_double(), k, false, check, "k_nonnegative_sampled");
}

Verdict is_k_nonnegative(const Eigen::MatrixXd& a, const Cone& k, const MapCheck& check) {
  check_shape(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()), k, "is_k_nonnegative");
  if (finite_exact(k)) return is_k_nonnegative(RatMatrix::from_double(a), k, check);
  return sampled_map_test(a, k, false, check, "k_nonnegative_sampled");
}

Verdict is_k_positive(const RatMatrix& a, const Cone& k, const MapCheck& check) {
  check_shape(a.rows(), a.cols(), k, "is_k_positive");
  if (finite_exact(k)) return exact_map_test(a, k, true, "k_positive_exact");
  return sampled_map_test(a.to_double(), k, true, check, "k_positive_sampled");
}

Verdict is_k_positive(const Eigen::MatrixXd& a, const Cone& k, const MapCheck& check) {
  check_shape(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()), k, "is_k_positive");
  if (finite_exact(k)) return is_k_positive(RatMatrix::from_double(a), k, check);
  return sampled_map_test(a, k, true, check, "k_positive_sampled");
}

IrreducibilityResult irreducible_by_eigenvectors(const Eigen::MatrixXd& a, const Cone& k,
                                                 const TolerancePolicy& tol) {
  check_shape(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()), k, "irreducible_by_eigenvectors");
  const char* method = "eigenvector_scan";
  bool complete = true;
  const std::vector<RealEigen> pairs = real_eigenpairs(a, k, complete);
  if (!complete) return {Verdict::inconclusive(method, "eigen-decomposition did not converge"), std::nullopt};

  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  bool fragile = false;
  std::vector<EigenWitness> inside;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (double sign : {1.0, -1.0}) {
      const Eigen::VectorXd v = sign * pairs[i].vector;
      const EigenLocation loc = locate(k, v, tol, fragile);
      if (loc == EigenLocation::Boundary) {
        EigenWitness ew{pairs[i].value, v, loc};
        Witness w{"eigenvector", {v}, {pairs[i].value}, "eigenvector on the cone boundary"};
        return {Verdict::fails(method, std::move(w)), ew};
      }
      if (loc == EigenLocation::Interior) inside.push_back({pairs[i].value, v, loc});
    }
  }

  // A repeated eigenvalue whose eigenspace meets K contains boundary eigenvectors.
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      if (i == j || std::abs(pairs[i].value - pairs[j].value) > 1e-8 * scale) continue;
      for (double sign : {1.0, -1.0}) {
        const Eigen::VectorXd v = sign * pairs[i].vector;
        if (!contains(k, v, tol).is_holds()) continue;
        Eigen::VectorXd w = pairs[j].vector - pairs[j].vector.dot(v) * v;
        if (w.norm() < 1e-8) continue;
        if (auto b = boundary_in_span(k, v, w / w.norm(), tol)) {
          EigenWitness ew{pairs[i].value, *b, EigenLocation::Boundary};
          Witness wit{"eigenvector", {*b}, {pairs[i].value}, "boundary vector in a repeated eigenspace"};
          return {Verdict::fails(method, std::move(wit)), ew};
        }
      }
    }
  }

  if (fragile) return {Verdict::inconclusive(method, "eigenvector location inside fragility band"), std::nullopt};
  if (inside.size() == 1) return {Verdict::holds(method), inside.front()};
  if (inside.empty()) {
    return {Verdict::inconclusive(method, "no real eigenvector found in the cone"), std::nullopt};
  }
  Witness w{"eigenvectors", {inside[0].eigenvector, inside[1].eigenvector},
            {inside[0].eigenvalue, inside[1].eigenvalue}, "two eigenlines meet the interior"};
  return {Verdict::fails(method, std::move(w)), inside.front()};
}

Verdict orthant_graph_irreducible(const RatMatrix& a) {
  if (!a.is_square()) throw DimensionError("orthant_graph_irreducible: matrix must be square");
  const std::size_t n = a.rows();
  for (std::size_t start = 0; start < n; ++start) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{start};
    seen[start] = true;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (!seen[j] && a(j, i) != 0) {
          seen[j] = true;
          stack.push_back(j);
        }
      }
    }
    bool all = true;
    Eigen::VectorXd face = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[j]) {
        face[static_cast<Eigen::Index>(j)] = 1.0;
      } else {
        all = false;
      }
    }
    if (!all) {
      Witness w{"invariant_face", {face}, {static_cast<double>(start)},
                "indicator of a coordinate face mapped into itself"};
      return Verdict::fails("orthant_graph", std::move(w));
    }
  }
  return Verdict::holds("orthant_graph");
}

Verdict orthant_power_irreducible(const RatMatrix& a) {
  if (!a.is_square()) throw DimensionError("orthant_power_irreducible: matrix must be square");
  const auto n = static_cast<Eigen::Index>(a.rows());
  Eigen::MatrixXi b(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      b(i, j) = (i == j || a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) != 0) ? 1 : 0;
    }
  }
  Eigen::MatrixXi p = Eigen::MatrixXi::Identity(n, n);
  for (Eigen::Index step = 0; step + 1 < n; ++step) {
    p = (p * b).unaryExpr([](int x) { return x > 0 ? 1 : 0; });
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (p(i, j) == 0) {
        Witness w{"zero_entry", {Eigen::VectorXd::Unit(n, i), Eigen::VectorXd::Unit(n, j)}, {0.0},
                  "zero entry (i, j) of (I + A)^(n-1)"};
        return Verdict::fails("orthant_power", std::move(w));
      }
    }
  }
  return Verdict::holds("orthant_power");
}

IrreducibilityResult is_k_irreducible(const RatMatrix& a, const Cone& k, const MapCheck& check) {
  check_shape(a.rows(), a.cols(), k, "is_k_irreducible");
  const Verdict nonneg = is_k_nonnegative(a, k, check);
  if (nonneg.is_fails()) throw PreconditionError("is_k_irreducible: matrix is not K-nonnegative on " + k.name());
  if (nonneg.is_inconclusive()) {
    return {Verdict::inconclusive("k_irreducible", "K-nonnegativity is inconclusive: " + nonneg.detail,
                                  nonneg.sampling_supported),
            std::nullopt};
  }
  if (k.kind() == ConeKind::Orthant) {
    Verdict graph = orthant_graph_irreducible(a);
    const Verdict power = orthant_power_irreducible(a);
    if (graph.status != power.status) {
      return {Verdict::inconclusive("orthant_graph", "graph and power criteria disagree"), std::nullopt};
    }
    IrreducibilityResult eig = irreducible_by_eigenvectors(a.to_double(), k, check.tol);
    return {std::move(graph), eig.eigen_witness};
  }
  IrreducibilityResult r = irreducible_by_eigenvectors(a.to_double(), k, check.tol);
  r.verdict.sampling_supported = nonneg.sampling_supported;
  return r;
}

IrreducibilityResult is_k_irreducible(const Eigen::MatrixXd& a, const Cone& k, const MapCheck& check) {
  check_shape(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()), k, "is_k_irreducible");
  if (k.kind() == ConeKind::Orthant) return is_k_irreducible(RatMatrix::from_double(a), k, check);
  const Verdict nonneg = is_k_nonnegative(a, k, check);
  if (nonneg.is_fails()) throw PreconditionError("is_k_irreducible: matrix is not K-nonnegative on " + k.name());
  if (nonneg.is_inconclusive()) {
    return {Verdict::inconclusive("k_irreducible", "K-nonnegativity is inconclusive: " + nonneg.detail, true),
            std::nullopt};
  }
  IrreducibilityResult r = irreducible_by_eigenvectors(a, k, check.tol);
  r.verdict.sampling_supported = nonneg.sampling_supported;
  return r;
}

Verdict brualdi_check(const RatMatrix& a) {
  if (!a.is_square()) throw DimensionError("brualdi_check: matrix must be square");
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) < 0) throw PreconditionError("brualdi_check: matrix has a negative entry");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    bool row_zero = true;
    bool col_zero = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) != 0) row_zero = false;
      if (a(j, i) != 0) col_zero = false;
    }
    if (row_zero || col_zero) {
      Witness w{row_zero ? "zero_row" : "zero_column",
                {Eigen::VectorXd::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i))},
                {static_cast<double>(i)},
                row_zero ? "row of zeros" : "column of zeros"};
      return Verdict::fails("brualdi", std::move(w));
    }
  }
  return Verdict::holds("brualdi");
}

MapClassification classify_map(const RatMatrix& a, const Cone& k, const MapCheck& check) {
  MapClassification c;
  c.k_nonnegative = is_k_nonnegative(a, k, check);
  if (!c.k_nonnegative.is_holds()) {
    c.k_positive = c.k_nonnegative;
    c.k_positive.method = "k_positive";
    c.k_irreducible = c.k_nonnegative;
    c.k_irreducible.method = "k_irreducible";
    c.k_irreducible.detail = "irreducibility is only defined for K-nonnegative maps";
    return c;
  }
  c.k_positive = is_k_positive(a, k, check);
  IrreducibilityResult irr = is_k_irreducible(a, k, check);
  c.k_irreducible = std::move(irr.verdict);
  c.eigen_witness = std::move(irr.eigen_witness);
  return c;
}

RatMatrix quadratic_as_map(const QuadraticForm& q, const Cone& k) {
  if (q.num_vars() != k.dim()) throw DimensionError("quadratic_as_map: form and cone dimensions differ");
  RatMatrix l = q.matrix();
  const RatVector w = metric_weights_rational(k);
  for (std::size_t i = 0; i < l.rows(); ++i) {
    for (std::size_t j = 0; j < l.cols(); ++j) l(i, j) /= w[i];
  }
  return l;
}

}  // namespace klorentz
