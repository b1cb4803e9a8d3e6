#pragma once

#include "inputs.hpp"

namespace klorentz::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kExitHolds = 0, kExitFails = 1, kExitInconclusive = 2, kExitUsage = 3 };

int exit_code(Status s);

json to_json(const Eigen::VectorXd& v);
json to_json(const Witness& w);
json to_json(const Verdict& v);
json to_json(const EigenWitness& w);
json to_json(const Inertia& in);
json plan_json(std::size_t samples, std::uint64_t seed, const TolerancePolicy& tol);

}  // namespace klorentz::cli
