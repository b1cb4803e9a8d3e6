#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Dense>

#include "klorentz/cone.hpp"
#include "klorentz/polynomial.hpp"
#include "klorentz/rational.hpp"
#include "klorentz/verdict.hpp"

namespace klorentz {

/// Sampling budget and tolerances for checks that cannot be exact (SOC, PSD).
struct MapCheck {
  std::size_t budget = 2000;
  std::uint64_t seed = 42;
  TolerancePolicy tol{};
};

enum class EigenLocation { Interior, Boundary, Outside };
std::string_view to_string(EigenLocation loc);

struct EigenWitness {
  double eigenvalue = 0.0;
  Eigen::VectorXd eigenvector;
  EigenLocation location = EigenLocation::Outside;
};

struct IrreducibilityResult {
  Verdict verdict;
  std::optional<EigenWitness> eigen_witness;
};

struct MapClassification {
  Verdict k_nonnegative;
  Verdict k_positive;
  Verdict k_irreducible;
  std::optional<EigenWitness> eigen_witness;
};

/// A(K) subset of K. Exact for Orthant and Polyhedral, sampled for SOC and PSD.
Verdict is_k_nonnegative(const RatMatrix& a, const Cone& k, const MapCheck& check = {});
Verdict is_k_nonnegative(const Eigen::MatrixXd& a, const Cone& k, const MapCheck& check = {});

/// A(K \ {0}) subset of int K. Exact for Orthant and Polyhedral, sampled otherwise.
Verdict is_k_positive(const RatMatrix& a, const Cone& k, const MapCheck& check = {});
Verdict is_k_positive(const Eigen::MatrixXd& a, const Cone& k, const MapCheck& check = {});

/// Requires A to be K-nonnegative (PreconditionError if that check Fails).
/// Orthant: strong connectivity of the digraph i -> j iff A_ji != 0, cross-checked
/// against positivity of (I + A)^(n-1). Other cones: eigenvector test.
IrreducibilityResult is_k_irreducible(const RatMatrix& a, const Cone& k, const MapCheck& check = {});
IrreducibilityResult is_k_irreducible(const Eigen::MatrixXd& a, const Cone& k, const MapCheck& check = {});

/// Eigenvector criterion alone: no real eigenvector (either sign) on the
/// boundary, and exactly one eigenline meeting K, in its interior.
IrreducibilityResult irreducible_by_eigenvectors(const Eigen::MatrixXd& a, const Cone& k,
                                                 const TolerancePolicy& tol = {});

/// Orthant graph criterion; the Fails witness is the indicator of an invariant face.
Verdict orthant_graph_irreducible(const RatMatrix& a);
/// (I + A)^(n-1) entrywise positive, computed on the zero pattern.
Verdict orthant_power_irreducible(const RatMatrix& a);

/// Nonnegative A has no zero row and no zero column.
Verdict brualdi_check(const RatMatrix& a);

MapClassification classify_map(const RatMatrix& a, const Cone& k, const MapCheck& check = {});

/// The linear map W^{-1} Q self-adjoint for the cone's inner product, so that
/// q(x) = <x, L x>_K. Equals Q except on PSD cones.
RatMatrix quadratic_as_map(const QuadraticForm& q, const Cone& k);

}  // namespace klorentz
