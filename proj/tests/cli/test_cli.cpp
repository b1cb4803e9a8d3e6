#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace klorentz::cli {
namespace {

using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("klorentz_cli_" + name);
  std::ofstream(path) << contents;
  return path.string();
}

const char* kExampleF = "x1*x1*x2 + x1*x1*x3 + x1*x2*x3 + x4^3";

TEST(Cli, ExtremeReductionNamesFailingChain) {
  const Result r = run_cli({"check-lorentzian", "--cone", "orthant:4", "--method", "extreme", kExampleF});
  ASSERT_EQ(r.code, 1) << r.err;
  const json rep = r.report();
  EXPECT_EQ(rep["schema"], 1);
  EXPECT_EQ(rep["verdict"]["status"], "fails");
  EXPECT_EQ(rep["verdict"]["witness"]["kind"], "derivative_chain");
  EXPECT_NE(rep["verdict"]["witness"]["note"].get<std::string>().find("D_a^1"), std::string::npos);
  EXPECT_EQ(rep["inputs"]["polynomial"], "x1^2*x2 + x1^2*x3 + x1*x2*x3 + x4^3");
}

TEST(Cli, SocCertificate) {
  const Result r = run_cli({"check-quadratic", "--cone", "soc:3", "--method", "soc-slemma", "x1^2 - x2^2 - x3^2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(r.report()["certificate"]["lambda"].get<double>(), 1.0, 1e-6);
}

TEST(Cli, PhiOfRForm) {
  const Result r = run_cli({"phi", "r:2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["result"]["polynomial"], "0");
  EXPECT_TRUE(r.report()["result"]["is_zero"].get<bool>());
}

TEST(Cli, QuadraticPaths) {
  for (const char* m : {"a", "b", "c", "def"}) {
    EXPECT_EQ(run_cli({"check-quadratic", "--cone", "orthant:2", "--method", m, "x1^2 - 2*x1*x2 + x2^2"}).code, 1) << m;
    EXPECT_EQ(run_cli({"check-quadratic", "--cone", "soc:3", "--method", m, "x1^2 - x2^2 - x3^2"}).code, 0) << m;
  }
  EXPECT_EQ(run_cli({"check-quadratic", "--cone", "soc:3", "--method", "zz", "x1^2"}).code, 3);
}

TEST(Cli, OtherChecks) {
  EXPECT_EQ(run_cli({"check-clc", "--cone", "orthant:2", "x1^4 + x2^4"}).code, 1);
  EXPECT_EQ(run_cli({"check-interior", "--cone", "orthant:2", "x1*x2"}).code, 1);
  EXPECT_EQ(run_cli({"check-lorentzian", "--cone", "orthant:3", "x1*x2*x3"}).code, 0);
  EXPECT_EQ(run_cli({"check-matrix", "--classify", "brualdi", "[[1,1],[0,0]]"}).code, 1);
  EXPECT_EQ(run_cli({"check-matrix", "--cone", "orthant:2", "[[0,1],[1,0]]"}).code, 0);
  EXPECT_EQ(run_cli({"check-matrix", "--cone", "orthant:2", "--classify", "positive", "[[0,1],[1,0]]"}).code, 1);
  EXPECT_EQ(run_cli({"check-psd-quartic", "r:2"}).code, 0);
  EXPECT_EQ(run_cli({"check-psd-quartic", "--quartic", "x1^4 - 6*x1^2*x2^2 + x2^4"}).code, 1);
  EXPECT_EQ(run_cli({"sum-check", "--cone", "orthant:3", "--b", "1,0,0", "--c", "[1,0,0]", "x1*x2*x3", "x1*x2*x3"}).code,
            0);
}

TEST(Cli, PreimageAndShift) {
  const Result p = run_cli({"preimage", "x1^2*x2^2"});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(p.report()["result"]["quadratic"]["matrix"][2][2], "1/2");
  EXPECT_EQ(p.report()["result"]["phi"], "x1^2*x2^2");
  const Result s = run_cli({"shift", "[[0,0,0],[0,0,0],[0,0,0]]"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(s.report()["result"]["t"], "1");
  EXPECT_EQ(s.report()["result"]["inertia"]["positive"], 1);
}

TEST(Cli, PolyhedralConeSpec) {
  const std::string spec =
      R"({"type": "polyhedral", "generators": [[1, 0], [1, 1]], "dual_generators": [[0, 1], ["1", -1]]})";
  const Result r = run_cli({"check-quadratic", "--cone", spec, "x1*x2"});
  EXPECT_NE(r.code, 3) << r.err;
  EXPECT_EQ(r.report()["inputs"]["cone"]["type"], "polyhedral");
  EXPECT_EQ(run_cli({"check-quadratic", "--cone", R"({"type": "cube", "n": 2})", "x1*x2"}).code, 3);
  EXPECT_EQ(run_cli({"check-quadratic", "--cone", "orthant", "x1*x2"}).code, 3);
}

TEST(Cli, ParseErrorsReportPosition) {
  const Result r = run_cli({"check-lorentzian", "--cone", "orthant:3", "x1*x2 + "});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("line 1, column 9"), std::string::npos) << r.err;
  EXPECT_EQ(run_cli({"check-lorentzian", "--cone", "orthant:3", "x1^2 + x2"}).code, 3);
  EXPECT_EQ(run_cli({"no-such-command"}).code, 3);
  EXPECT_EQ(run_cli({"check-lorentzian", "x1*x2"}).code, 3);
}

TEST(Cli, FileArguments) {
  const std::string path = temp_file("poly.txt", std::string(kExampleF) + "\n");
  const Result r = run_cli({"check-lorentzian", "--cone", "orthant:4", "--method", "extreme", "@" + path});
  EXPECT_EQ(r.code, 1) << r.err;
  EXPECT_EQ(r.report()["argv"].back(), kExampleF);
  EXPECT_EQ(run_cli({"phi", "@/nonexistent/klorentz"}).code, 3);
}

TEST(Cli, ReportsAreDeterministic) {
  const std::vector<std::string> args{"check-lorentzian", "--cone", "soc:3", "--samples", "200", "--seed", "9",
                                      "x1^3 - x1*x2^2 - x1*x3^2"};
  json a = run_cli(args).report();
  json b = run_cli(args).report();
  a.erase("wall_time_s");
  b.erase("wall_time_s");
  EXPECT_EQ(a.dump(), b.dump());
  EXPECT_EQ(a["plan"]["seed"], 9);
  EXPECT_EQ(a["plan"]["samples"], 200);
}

TEST(Cli, ReplayReproducesFailures) {
  const std::vector<std::vector<std::string>> cases{
      {"check-lorentzian", "--cone", "orthant:4", kExampleF},
      {"check-quadratic", "--cone", "orthant:2", "--method", "b", "x1^2 - 2*x1*x2 + x2^2"},
      {"check-clc", "--cone", "orthant:2", "--samples", "300", "x1^4 + x2^4"},
      {"check-psd-quartic", "--quartic", "x1^4 - 6*x1^2*x2^2 + x2^4"},
  };
  int k = 0;
  for (const auto& args : cases) {
    const Result r = run_cli(args);
    ASSERT_EQ(r.code, 1) << r.err;
    const std::string path = temp_file("report" + std::to_string(k++) + ".json", r.out);
    const Result rep = run_cli({"--replay", path});
    ASSERT_EQ(rep.code, 0) << rep.err;
    EXPECT_TRUE(rep.report()["reproduced"].get<bool>());
    EXPECT_TRUE(rep.report()["witness_reproduced"].get<bool>());
  }
}

TEST(Cli, ReplayDetectsTampering) {
  json report = run_cli({"check-quadratic", "--cone", "orthant:2", "x1^2 - 2*x1*x2 + x2^2"}).report();
  report["verdict"]["witness"]["values"][0] = 5.0;
  const std::string path = temp_file("tampered.json", report.dump());
  const Result rep = run_cli({"--replay", path});
  EXPECT_EQ(rep.code, 1);
  EXPECT_FALSE(rep.report()["witness_reproduced"].get<bool>());
  EXPECT_EQ(run_cli({"--replay", temp_file("junk.json", "{}")}).code, 3);
}

}  // namespace
}  // namespace klorentz::cli
