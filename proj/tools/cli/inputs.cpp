#include "inputs.hpp"

#include <cctype>
#include <cmath>

namespace klorentz::cli {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::size_t parse_size(std::string_view s, const char* what) {
  const std::string t = trim(s);
  if (t.empty() || t.size() > 6) throw ParseError(std::string("bad ") + what + " '" + t + "'");
  for (char c : t) {
    if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError(std::string("bad ") + what + " '" + t + "'");
  }
  return std::stoul(t);
}

std::vector<RatVector> rows_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of rows");
  std::vector<RatVector> rows;
  for (const auto& r : j) {
    if (!r.is_array()) throw ParseError(std::string(what) + " must be an array of rows");
    RatVector v;
    for (const auto& x : r) v.push_back(rational_from_json(x));
    rows.push_back(std::move(v));
  }
  return rows;
}

Cone cone_from_json(const json& j) {
  if (!j.is_object() || !j.contains("type")) throw ParseError("cone spec needs a \"type\" field");
  const std::string type = j.at("type").get<std::string>();
  if (type == "polyhedral") {
    if (!j.contains("generators") || !j.contains("dual_generators")) {
      throw ParseError("polyhedral cone spec needs \"generators\" and \"dual_generators\"");
    }
    Cone k = Cone::polyhedral(rows_from_json(j.at("generators"), "generators"),
                              rows_from_json(j.at("dual_generators"), "dual_generators"));
    if (j.contains("n") && j.at("n").get<std::size_t>() != k.dim()) {
      throw DimensionError("cone spec: n does not match the generator length");
    }
    return k;
  }
  if (!j.contains("n") || !j.at("n").is_number_unsigned()) throw ParseError("cone spec needs a nonnegative \"n\"");
  const auto n = j.at("n").get<std::size_t>();
  if (type == "orthant") return Cone::orthant(n);
  if (type == "soc") return Cone::second_order(n);
  if (type == "psd") return Cone::psd(n);
  throw ParseError("unknown cone type '" + type + "'");
}

}  // namespace

Cone parse_cone(std::string_view text) {
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '{') {
    try {
      return cone_from_json(parse_json(t, "cone spec"));
    } catch (const json::exception& e) {
      throw ParseError(std::string("cone spec: ") + e.what());
    }
  }
  const auto colon = t.find(':');
  if (colon == std::string::npos) throw ParseError("cone spec '" + t + "' is not <type>:<n> or JSON");
  const std::string type = t.substr(0, colon);
  const std::size_t n = parse_size(std::string_view(t).substr(colon + 1), "cone dimension");
  if (type == "orthant") return Cone::orthant(n);
  if (type == "soc") return Cone::second_order(n);
  if (type == "psd") return Cone::psd(n);
  throw ParseError("unknown cone type '" + type + "'");
}

json cone_to_json(const Cone& k) {
  json j;
  j["type"] = std::string(to_string(k.kind()));
  j["n"] = k.kind() == ConeKind::PSD ? k.side() : k.dim();
  if (k.kind() == ConeKind::Polyhedral) {
    json g = json::array();
    for (const auto& r : k.generators()) g.push_back(to_json(r));
    json h = json::array();
    for (const auto& r : k.dual_generators()) h.push_back(to_json(r));
    j["generators"] = std::move(g);
    j["dual_generators"] = std::move(h);
  }
  return j;
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(mpz_class(j.dump()));
  if (j.is_number_float()) return to_rational(j.get<double>());
  if (j.is_string()) return parse_rational(trim(j.get<std::string>()));
  throw ParseError("expected a number or a \"p/q\" string, got " + j.dump());
}

RatVector parse_rat_vector(std::string_view text) {
  const std::string t = trim(text);
  if (!t.empty() && t.front() == '[') {
    const json j = parse_json(t, "vector");
    if (!j.is_array()) throw ParseError("vector must be a JSON array");
    RatVector v;
    for (const auto& x : j) v.push_back(rational_from_json(x));
    return v;
  }
  RatVector v;
  std::size_t start = 0;
  while (start <= t.size()) {
    const std::size_t comma = std::min(t.find(',', start), t.size());
    v.push_back(parse_rational(trim(std::string_view(t).substr(start, comma - start))));
    start = comma + 1;
  }
  return v;
}

RatMatrix rat_matrix_from_json(const json& j) {
  const std::vector<RatVector> rows = rows_from_json(j, "matrix");
  if (rows.empty()) throw ParseError("matrix is empty");
  return RatMatrix::from_rows(rows);
}

RatMatrix parse_rat_matrix(std::string_view text) { return rat_matrix_from_json(parse_json(text, "matrix")); }

SymQuadratic parse_sym_quadratic(std::string_view text) {
  const std::string t = trim(text);
  if (t.rfind("r:", 0) == 0) return r_form(parse_size(std::string_view(t).substr(2), "r-form size"));
  const json j = parse_json(t, "quadratic");
  if (j.is_object()) {
    if (!j.contains("n") || !j.contains("matrix")) throw ParseError("quadratic needs \"n\" and \"matrix\"");
    return SymQuadratic(j.at("n").get<std::size_t>(), rat_matrix_from_json(j.at("matrix")));
  }
  RatMatrix m = rat_matrix_from_json(j);
  std::size_t n = 0;
  while (psd_dim(n) < m.rows()) ++n;
  if (psd_dim(n) != m.rows()) {
    throw DimensionError("quadratic matrix size " + std::to_string(m.rows()) + " is not n(n+1)/2");
  }
  return SymQuadratic(n, std::move(m));
}

json to_json(const Rational& r) { return to_string(r); }

json to_json(const RatVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json to_json(const RatMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

json to_json(const SymQuadratic& q) { return {{"n", q.n}, {"matrix", to_json(q.q)}}; }

}  // namespace klorentz::cli
