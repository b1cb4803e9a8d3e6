#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "klorentz/tolerance.hpp"

namespace klorentz {

std::string_view to_string(Status s);

/// Structured evidence attached to a verdict. `kind` names the shape of the
/// evidence (e.g. "pair", "point", "eigenvector", "derivative_chain"); vectors and
/// values are interpreted according to it.
struct Witness {
  std::string kind;
  std::vector<Eigen::VectorXd> vectors;
  std::vector<double> values;
  std::string note;
};

/// Three-valued check result. Fails always carries a witness.
struct Verdict {
  Status status = Status::Inconclusive;
  std::string method;
  bool sampling_supported = false;
  std::optional<Witness> witness;
  std::string detail;

  static Verdict holds(std::string method, bool sampled = false, std::string detail = {}) {
    return {Status::Holds, std::move(method), sampled, std::nullopt, std::move(detail)};
  }
  static Verdict fails(std::string method, Witness w, bool sampled = false,
                       std::string detail = {}) {
    return {Status::Fails, std::move(method), sampled, std::move(w), std::move(detail)};
  }
  static Verdict inconclusive(std::string method, std::string detail, bool sampled = false) {
    return {Status::Inconclusive, std::move(method), sampled, std::nullopt, std::move(detail)};
  }

  bool is_holds() const { return status == Status::Holds; }
  bool is_fails() const { return status == Status::Fails; }
  bool is_inconclusive() const { return status == Status::Inconclusive; }
};

}  // namespace klorentz
