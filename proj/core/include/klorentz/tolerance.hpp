#pragma once

#include <algorithm>

namespace klorentz {

enum class Status { Holds, Fails, Inconclusive };

/// Numerical tolerance policy threaded through every spectral and membership verdict.
///
/// A quantity is compared against tau = tau_rel * max(1, scale). Values whose
/// magnitude lies inside the fragility band (tau / band, tau * band) around the
/// decision threshold are reported as Inconclusive instead of being rounded to
/// either side.
struct TolerancePolicy {
  double tau_rel = 1e-9;
  double band = 10.0;

  double tau(double scale) const { return tau_rel * std::max(1.0, scale); }
  bool fragile(double magnitude, double tau) const {
    return magnitude > tau / band && magnitude < tau * band;
  }
  TolerancePolicy doubled() const { return {tau_rel * 2.0, band}; }
};

/// Non-strict test `value >= 0` (up to -tau).
inline Status at_least_zero(double value, double tau, const TolerancePolicy& tol) {
  if (value >= 0.0) return Status::Holds;
  if (tol.fragile(-value, tau)) return Status::Inconclusive;
  return -value <= tau / tol.band ? Status::Holds : Status::Fails;
}

/// Strict test `value > 0` (beyond +tau).
inline Status above_zero(double value, double tau, const TolerancePolicy& tol) {
  if (value <= 0.0) return Status::Fails;
  if (tol.fragile(value, tau)) return Status::Inconclusive;
  return value >= tau * tol.band ? Status::Holds : Status::Fails;
}

}  // namespace klorentz
