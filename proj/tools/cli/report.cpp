#include "report.hpp"

namespace klorentz::cli {

int exit_code(Status s) {
  switch (s) {
    case Status::Holds: return kExitHolds;
    case Status::Fails: return kExitFails;
    case Status::Inconclusive: break;
  }
  return kExitInconclusive;
}

json to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json to_json(const Witness& w) {
  json vectors = json::array();
  for (const auto& v : w.vectors) vectors.push_back(to_json(v));
  return {{"kind", w.kind}, {"vectors", std::move(vectors)}, {"values", w.values}, {"note", w.note}};
}

json to_json(const Verdict& v) {
  json j{{"status", to_string(v.status)},
         {"method", v.method},
         {"sampling_supported", v.sampling_supported},
         {"detail", v.detail}};
  j["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  return j;
}

json to_json(const EigenWitness& w) {
  return {{"eigenvalue", w.eigenvalue}, {"eigenvector", to_json(w.eigenvector)}, {"location", to_string(w.location)}};
}

json to_json(const Inertia& in) {
  return {{"positive", in.n_pos}, {"negative", in.n_neg}, {"zero", in.n_zero}, {"fragile", in.fragile}};
}

json plan_json(std::size_t samples, std::uint64_t seed, const TolerancePolicy& tol) {
  return {{"samples", samples}, {"seed", seed}, {"tau_rel", tol.tau_rel}, {"band", tol.band}};
}

}  // namespace klorentz::cli
