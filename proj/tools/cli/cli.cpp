#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "inputs.hpp"
#include "report.hpp"

namespace klorentz::cli {

namespace {

struct Options {
  std::string cone;
  std::string method;
  std::string classify = "irreducible";
  std::string interior_point;
  std::string b;
  std::string c;
  std::size_t samples = CheckPlan{}.samples;
  std::size_t quartic_budget = QuarticPlan{}.budget;
  std::uint64_t seed = 42;
  double tau_rel = 1e-9;
  std::size_t num_vars = 0;
  bool quartic = false;
  std::string arg0;
  std::string arg1;
  std::vector<std::string> positional;
};

struct Outcome {
  json inputs = json::object();
  std::optional<Verdict> verdict;
  json extra = json::object();
  bool plan_used = true;
  bool quartic_plan = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Replaces "@path" arguments by the file contents.
std::vector<std::string> expand_file_args(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  out.reserve(args.size());
  for (const auto& a : args) {
    if (a.size() > 1 && a.front() == '@') {
      std::string text = read_file(a.substr(1));
      while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
      out.push_back(std::move(text));
    } else {
      out.push_back(a);
    }
  }
  return out;
}

TolerancePolicy tolerance(const Options& o) { return {o.tau_rel, TolerancePolicy{}.band}; }

CheckPlan check_plan(const Options& o) {
  CheckPlan plan;
  plan.samples = o.samples;
  plan.seed = o.seed;
  plan.tol = tolerance(o);
  return plan;
}

Cone require_cone(const Options& o) {
  if (o.cone.empty()) throw UsageError("--cone is required");
  return parse_cone(o.cone);
}

Polynomial poly_arg(const Options& o, std::size_t index, std::size_t num_vars) {
  if (o.positional.size() <= index) throw UsageError("missing polynomial argument");
  return parse_polynomial(o.positional[index], num_vars);
}

const std::string& text_arg(const Options& o, std::size_t index, const char* what) {
  if (o.positional.size() <= index) throw UsageError(std::string("missing ") + what + " argument");
  return o.positional[index];
}

json poly_inputs(const Polynomial& f, const Cone& k) {
  return {{"polynomial", to_string(f)}, {"num_vars", f.num_vars()}, {"degree", f.degree()}, {"cone", cone_to_json(k)}};
}

// ---------------------------------------------------------------------------

Outcome check_quadratic(const Options& o) {
  const Cone k = require_cone(o);
  const Polynomial f = poly_arg(o, 0, k.dim());
  const QuadraticForm q = as_quadratic(f);
  CheckPlan plan = check_plan(o);
  Outcome r;
  r.inputs = poly_inputs(f, k);
  r.inputs["matrix"] = to_json(q.matrix());
  const std::string m = o.method.empty() ? "a" : o.method;
  if (m == "extreme-values") {
    r.verdict = quad_extreme_value_test(q, k, plan);
  } else if (m == "soc-slemma") {
    if (k.kind() != ConeKind::SecondOrder) throw UsageError("--method soc-slemma needs a soc cone");
    const SocCertificate cert = quad_soc_certificate(q, plan.tol);
    r.verdict = cert.verdict;
    r.extra["certificate"] = {{"lambda", cert.lambda ? json(*cert.lambda) : json(nullptr)},
                              {"min_eigenvalue", cert.min_eigenvalue}};
  } else {
    if (m == "a") {
      plan.positivity = PositivityPath::DualMap;
    } else if (m == "b") {
      plan.positivity = PositivityPath::ExtremePairs;
    } else if (m == "c") {
      plan.positivity = PositivityPath::InteriorValues;
    } else if (m == "def") {
      plan.positivity = PositivityPath::DefinitionSampled;
    } else {
      throw UsageError("unknown --method '" + m + "'");
    }
    r.verdict = quad_is_lorentzian(q, k, plan);
  }
  r.inputs["method"] = m;
  return r;
}

Outcome check_lorentzian(const Options& o) {
  const Cone k = require_cone(o);
  const Polynomial f = poly_arg(o, 0, k.dim());
  const CheckPlan plan = check_plan(o);
  Outcome r;
  r.inputs = poly_inputs(f, k);
  const std::string m = o.method.empty() ? "sampled" : o.method;
  if (m == "sampled") {
    if (!o.interior_point.empty()) throw UsageError("--interior-point applies to --method extreme");
    r.verdict = is_lorentzian_sampled(f, k, plan);
  } else if (m == "extreme") {
    std::optional<RatVector> a;
    if (!o.interior_point.empty()) {
      a = parse_rat_vector(o.interior_point);
      r.inputs["interior_point"] = to_json(*a);
    }
    r.verdict = is_lorentzian_extreme_reduction(f, k, a, plan);
  } else {
    throw UsageError("unknown --method '" + m + "'");
  }
  r.inputs["method"] = m;
  return r;
}

Outcome check_clc(const Options& o) {
  const Cone k = require_cone(o);
  const Polynomial f = poly_arg(o, 0, k.dim());
  Outcome r;
  r.inputs = poly_inputs(f, k);
  r.verdict = is_clc_sampled(f, k, check_plan(o));
  return r;
}

Outcome check_interior(const Options& o) {
  const Cone k = require_cone(o);
  const Polynomial f = poly_arg(o, 0, k.dim());
  Outcome r;
  r.inputs = poly_inputs(f, k);
  r.verdict = in_interior_sl(f, k, check_plan(o));
  return r;
}

Outcome check_matrix(const Options& o) {
  const RatMatrix a = parse_rat_matrix(text_arg(o, 0, "matrix"));
  Outcome r;
  r.inputs["matrix"] = to_json(a);
  r.inputs["classify"] = o.classify;
  if (o.classify == "brualdi") {
    r.verdict = brualdi_check(a);
    return r;
  }
  const Cone k = require_cone(o);
  r.inputs["cone"] = cone_to_json(k);
  const MapCheck check{o.samples, o.seed, tolerance(o)};
  if (o.classify == "nonneg") {
    r.verdict = is_k_nonnegative(a, k, check);
  } else if (o.classify == "positive") {
    r.verdict = is_k_positive(a, k, check);
  } else if (o.classify == "irreducible") {
    const IrreducibilityResult ir = is_k_irreducible(a, k, check);
    r.verdict = ir.verdict;
    if (ir.eigen_witness) r.extra["eigen_witness"] = to_json(*ir.eigen_witness);
  } else {
    throw UsageError("unknown --classify '" + o.classify + "'");
  }
  return r;
}

Outcome phi_cmd(const Options& o) {
  const SymQuadratic q = parse_sym_quadratic(text_arg(o, 0, "quadratic"));
  const Polynomial p = phi(q);
  Outcome r;
  r.plan_used = false;
  r.inputs["quadratic"] = to_json(q);
  r.extra["result"] = {{"polynomial", to_string(p)}, {"is_zero", p.is_zero()}};
  return r;
}

Outcome preimage_cmd(const Options& o) {
  const Polynomial p = poly_arg(o, 0, o.num_vars);
  const SymQuadratic m = canonical_preimage(p);
  Outcome r;
  r.plan_used = false;
  r.inputs["polynomial"] = to_string(p);
  r.inputs["num_vars"] = p.num_vars();
  r.extra["result"] = {{"quadratic", to_json(m)}, {"phi", to_string(phi(m))}};
  return r;
}

Outcome shift_cmd(const Options& o) {
  const SymQuadratic q = parse_sym_quadratic(text_arg(o, 0, "quadratic"));
  const auto [shifted, t] = lorentzian_shift(q);
  Outcome r;
  r.plan_used = false;
  r.inputs["quadratic"] = to_json(q);
  r.extra["result"] = {{"quadratic", to_json(shifted)},
                       {"t", to_json(t)},
                       {"inertia", to_json(inertia(shifted.q.to_double(), tolerance(o)))}};
  return r;
}

Outcome check_psd_quartic(const Options& o) {
  const std::string& text = text_arg(o, 0, "quadratic");
  Outcome r;
  SymQuadratic q;
  if (o.quartic) {
    const Polynomial p = parse_polynomial(text, o.num_vars);
    r.inputs["polynomial"] = to_string(p);
    q = lorentzian_shift(canonical_preimage(p)).first;
  } else {
    q = parse_sym_quadratic(text);
  }
  r.inputs["quadratic"] = to_json(q);
  r.quartic_plan = true;
  r.verdict = psd_lorentzian_via_quartic(q, QuarticPlan{o.quartic_budget, o.seed, tolerance(o)});
  return r;
}

Outcome sum_check(const Options& o) {
  const Cone k = require_cone(o);
  const Polynomial f = poly_arg(o, 0, k.dim());
  const Polynomial g = poly_arg(o, 1, k.dim());
  if (o.b.empty() || o.c.empty()) throw UsageError("--b and --c are required");
  const RatVector b = parse_rat_vector(o.b);
  const RatVector c = parse_rat_vector(o.c);
  Outcome r;
  r.inputs = poly_inputs(f, k);
  r.inputs["g"] = to_string(g);
  r.inputs["b"] = to_json(b);
  r.inputs["c"] = to_json(c);
  r.verdict = sum_is_lorentzian(f, g, b, c, k, check_plan(o));
  return r;
}

// ---------------------------------------------------------------------------

int replay(const std::string& path, std::ostream& out, std::ostream& err) {
  json original;
  try {
    original = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw UsageError("replay: '" + path + "' is not a report: " + e.what());
  }
  if (!original.is_object() || original.value("schema", 0) != kSchemaVersion || !original.contains("argv")) {
    throw UsageError("replay: '" + path + "' is not a schema " + std::to_string(kSchemaVersion) + " report");
  }
  const auto args = original.at("argv").get<std::vector<std::string>>();
  std::ostringstream rerun_out;
  const int code = run(args, rerun_out, err);
  if (code == kExitUsage) return kExitUsage;
  const json rerun = json::parse(rerun_out.str());

  auto strip = [](json j) {
    j.erase("wall_time_s");
    return j;
  };
  const bool identical = strip(original) == strip(rerun);
  json r{{"schema", kSchemaVersion}, {"command", "replay"}, {"source", path}, {"reproduced", identical},
         {"original_exit_code", original.value("exit_code", -1)}, {"replayed_exit_code", code}};
  if (original.contains("verdict")) {
    const json& v = original.at("verdict");
    r["original_status"] = v.at("status");
    r["replayed_status"] = rerun.at("verdict").at("status");
    if (v.at("status") == "fails") {
      r["witness_reproduced"] = rerun.at("verdict").at("status") == "fails" &&
                                rerun.at("verdict").at("witness") == v.at("witness");
    }
  }
  out << r.dump(2) << "\n";
  return identical ? kExitHolds : kExitFails;
}

void add_plan_options(CLI::App* sub, Options& o, std::size_t& samples, bool with_cone = true) {
  if (with_cone) sub->add_option("--cone", o.cone, "orthant:<n>, soc:<n>, psd:<n> or a JSON cone spec");
  sub->add_option("--samples", samples, "Sample budget")->capture_default_str();
  sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  sub->add_option("--tau-rel", o.tau_rel, "Relative tolerance")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  Options o;
  std::string replay_path;
  std::vector<std::string> args;

  CLI::App app{"Lorentzian polynomial checks on convex cones", "klorentz"};
  app.add_option("--replay", replay_path, "Re-run the command stored in a report and compare");
  app.require_subcommand(0, 1);

  using Handler = std::function<Outcome(const Options&)>;
  std::vector<std::pair<CLI::App*, Handler>> commands;
  auto command = [&](const char* name, const char* help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    commands.emplace_back(sub, std::move(h));
    return sub;
  };

  CLI::App* sub = command("check-quadratic", "Lorentzian test for a quadratic form", check_quadratic);
  add_plan_options(sub, o, o.samples);
  sub->add_option("--method", o.method, "a | b | c | def | extreme-values | soc-slemma");
  sub->add_option("polynomial", o.arg0)->required();

  sub = command("check-lorentzian", "Lorentzian test for a form of any degree", check_lorentzian);
  add_plan_options(sub, o, o.samples);
  sub->add_option("--method", o.method, "sampled | extreme");
  sub->add_option("--interior-point", o.interior_point, "Interior point a for --method extreme");
  sub->add_option("polynomial", o.arg0)->required();

  sub = command("check-clc", "Complete log-concavity on sampled points", check_clc);
  add_plan_options(sub, o, o.samples);
  sub->add_option("polynomial", o.arg0)->required();

  sub = command("check-interior", "Membership in the interior of the strictly Lorentzian forms", check_interior);
  add_plan_options(sub, o, o.samples);
  sub->add_option("polynomial", o.arg0)->required();

  sub = command("check-matrix", "Classify a linear map against a cone", check_matrix);
  add_plan_options(sub, o, o.samples);
  sub->add_option("--classify", o.classify, "nonneg | positive | irreducible | brualdi")->capture_default_str();
  sub->add_option("matrix", o.arg0, "JSON array of rows")->required();

  sub = command("phi", "Quartic q(x x^T) of a quadratic on symmetric matrices", phi_cmd);
  sub->add_option("quadratic", o.arg0, "r:<n> or a JSON matrix")->required();

  sub = command("preimage", "Canonical preimage of a quartic", preimage_cmd);
  sub->add_option("--n", o.num_vars, "Number of variables");
  sub->add_option("polynomial", o.arg0)->required();

  sub = command("shift", "Lorentzian shift m + t r", shift_cmd);
  sub->add_option("--tau-rel", o.tau_rel, "Relative tolerance")->capture_default_str();
  sub->add_option("quadratic", o.arg0, "r:<n> or a JSON matrix")->required();

  sub = command("check-psd-quartic", "PSD-cone Lorentzian test through the associated quartic", check_psd_quartic);
  add_plan_options(sub, o, o.quartic_budget, false);
  sub->add_flag("--quartic", o.quartic, "Argument is a quartic p; checks the shifted canonical preimage");
  sub->add_option("--n", o.num_vars, "Number of variables of the quartic");
  sub->add_option("quadratic", o.arg0, "r:<n>, a JSON matrix, or a quartic with --quartic")->required();

  sub = command("sum-check", "Sum test: D_b f = D_c g", sum_check);
  add_plan_options(sub, o, o.samples);
  sub->add_option("--b", o.b, "Direction b");
  sub->add_option("--c", o.c, "Direction c");
  sub->add_option("f", o.arg0)->required();
  sub->add_option("g", o.arg1)->required();

  try {
    args = expand_file_args(raw_args);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (!replay_path.empty()) {
      if (!app.get_subcommands().empty()) throw UsageError("--replay takes no subcommand");
      return replay(replay_path, out, err);
    }
    for (auto& [cmd, handler] : commands) {
      if (!cmd->parsed()) continue;
      for (const std::string* a : {&o.arg0, &o.arg1}) {
        if (!a->empty()) o.positional.push_back(*a);
      }
      const Outcome r = handler(o);
      json report{{"schema", kSchemaVersion}, {"command", cmd->get_name()}, {"argv", args}, {"inputs", r.inputs}};
      if (r.plan_used) report["plan"] = plan_json(r.quartic_plan ? o.quartic_budget : o.samples, o.seed, tolerance(o));
      int code = kExitHolds;
      if (r.verdict) {
        report["verdict"] = to_json(*r.verdict);
        code = exit_code(r.verdict->status);
      }
      for (const auto& [key, value] : r.extra.items()) report[key] = value;
      report["exit_code"] = code;
      report["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      out << report.dump(2) << "\n";
      return code;
    }
    err << app.help();
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
  }
  return kExitUsage;
}

}  // namespace klorentz::cli
