#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "klorentz/klorentz.hpp"

namespace klorentz::cli {

using nlohmann::json;

/// "orthant:4", "soc:3", "psd:2", or a JSON object
/// {"type": ..., "n": ..., "generators": [[...]], "dual_generators": [[...]]}.
Cone parse_cone(std::string_view text);
json cone_to_json(const Cone& k);

/// Rational from a JSON integer, a "p/q" string, or a float (converted exactly).
Rational rational_from_json(const json& j);
/// JSON array of numbers or "p/q" strings, or a comma-separated list.
RatVector parse_rat_vector(std::string_view text);
RatMatrix rat_matrix_from_json(const json& j);
RatMatrix parse_rat_matrix(std::string_view text);

/// "r:<n>", a JSON N x N matrix with N = n(n+1)/2, or {"n": n, "matrix": [[...]]}.
SymQuadratic parse_sym_quadratic(std::string_view text);

json to_json(const Rational& r);
json to_json(const RatVector& v);
json to_json(const RatMatrix& m);
json to_json(const SymQuadratic& q);

}  // namespace klorentz::cli
