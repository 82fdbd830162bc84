#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "forge/report.hpp"

using namespace forge;
namespace fs = std::filesystem;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  auto dir = fs::temp_directory_path() / ("forge_cli_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

/// Runs the forge binary with the given arguments (and optional environment
/// prefix), capturing stdout and stderr separately.
Result forge_cli(const std::string &args, const std::string &env = "") {
  const char *bin = std::getenv("FORGE_BIN");
  if (!bin) throw std::runtime_error("FORGE_BIN is not set");
  static int counter = 0;
  auto dir = scratch_dir();
  auto out = dir / ("out" + std::to_string(counter));
  auto err = dir / ("err" + std::to_string(counter++));
  std::string cmd = env + " '" + std::string(bin) + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
  int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(out), slurp(err)};
}

json parse(const Result &r) { return json::parse(r.out); }

struct ScratchCleanup : ::testing::Environment {
  void TearDown() override { fs::remove_all(scratch_dir()); }
};
const auto *const cleanup = ::testing::AddGlobalTestEnvironment(new ScratchCleanup);

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    if (!std::getenv("FORGE_BIN")) GTEST_SKIP() << "FORGE_BIN not set";
  }
};

}  // namespace

TEST_F(CliTest, CodesReport) {
  auto r = forge_cli("codes");
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = parse(r);
  EXPECT_EQ(j["schema"], kReportSchema);
  EXPECT_EQ(j["results"]["K56"]["dimension"], 9);
  EXPECT_EQ(j["results"]["K56"]["weights"], (json{{"0", 1}, {"24", 255}, {"32", 255}, {"56", 1}}));
  EXPECT_EQ(j["results"]["U51"]["dimension"], 8);
  EXPECT_TRUE(j["ok"].get<bool>());
}

TEST_F(CliTest, ChernReport) {
  auto r = forge_cli("chern");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(parse(r)["results"]["coefficients"], (json{1, 3, 6, 4}));
}

TEST_F(CliTest, B0RunIsDeterministicAndMeetsExpectations) {
  auto a = forge_cli("run --seed 1 --prime 101");
  ASSERT_EQ(a.status, 0) << a.err;
  auto j = parse(a);
  const auto &res = j["results"];
  EXPECT_EQ(res["solution_dimension"], 22);
  EXPECT_EQ(res["degree"], 6);
  EXPECT_EQ(res["sing_codim"], 3);
  EXPECT_EQ(res["sing_degree"], 56);
  EXPECT_EQ(res["radical"], true);
  EXPECT_EQ(res["even_set_match"], true);
  EXPECT_EQ(res["tangent_dimension"], 51);
  EXPECT_EQ(res["reduced_tangent_dimension"], 123);
  EXPECT_FALSE(j.contains("timings"));
  std::set<std::string> names;
  for (const auto &e : j["expectations"]) {
    names.insert(e["name"]);
    EXPECT_TRUE(e["pass"].get<bool>()) << e.dump();
  }
  for (auto n : {"solution_dimension", "sextic_degree", "sing_degree", "radical", "tangent_dimension",
                 "reduced_tangent_dimension"})
    EXPECT_TRUE(names.count(n)) << n;

  auto b = forge_cli("run --seed 1 --prime 101");
  EXPECT_EQ(a.out, b.out);

  // the report parses back to the same payload
  EXPECT_EQ(to_json(nodal_report_from_json(j)), j);
}

TEST_F(CliTest, GenericRunReportsTheDoubleCubic) {
  auto r = forge_cli("run --generic --seed 1");
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = parse(r);
  EXPECT_EQ(j["config"]["mode"], "generic");
  EXPECT_EQ(j["results"]["solution_dimension"], 21);
  EXPECT_EQ(j["results"]["double_cubic"], true);
  EXPECT_EQ(j["results"]["cubic_is_involution_determinant"], true);
  auto report = nodal_report_from_json(j);
  ASSERT_TRUE(report.cubic && report.sextic);
  EXPECT_EQ((*report.cubic * *report.cubic).monic(), report.sextic->monic());
  EXPECT_EQ(to_json(report), j);
  // a different seed gives a different tensor
  EXPECT_NE(parse(forge_cli("run --generic --seed 2"))["results"]["tensor"], j["results"]["tensor"]);
}

TEST_F(CliTest, TangentAndTimings) {
  auto r = forge_cli("tangent --timings");
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = parse(r);
  EXPECT_EQ(j["command"], "tangent");
  EXPECT_EQ(j["results"]["tangent_dimension"], 51);
  EXPECT_EQ(j["results"]["reduced_tangent_dimension"], 123);
  EXPECT_TRUE(j["results"]["sing_degree"].is_null());
  ASSERT_TRUE(j.contains("timings"));
  EXPECT_EQ(j["timings"].size(), 5u);
  // payload without timings is reproducible
  auto again = parse(forge_cli("tangent"));
  j.erase("timings");
  EXPECT_EQ(again, j);
}

TEST_F(CliTest, PrimeFromEnvironment) {
  auto r = forge_cli("tangent", "FORGE_PRIME=103");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(parse(r)["config"]["prime"], 103);
  EXPECT_EQ(forge_cli("tangent", "FORGE_PRIME=100").status, 2);
  EXPECT_EQ(parse(forge_cli("tangent --prime 107", "FORGE_PRIME=103"))["config"]["prime"], 107);
}

TEST_F(CliTest, TensorFileAndOutFile) {
  auto dir = scratch_dir();
  const PrimeField f(101);
  {
    std::ofstream(dir / "b0.json") << tensor_to_json({fixtures::b0(f), Side::Primal}).dump();
    std::ofstream(dir / "zero.json") << tensor_to_json({Tensor334(f), Side::Primal}).dump();
  }
  auto out = dir / "report.json";
  auto r = forge_cli("tangent --out '" + out.string() + "'");
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(json::parse(slurp(out))["results"]["tangent_dimension"], 51);

  auto t = forge_cli("involution --tensor '" + (dir / "b0.json").string() + "'");
  ASSERT_EQ(t.status, 0) << t.err;
  auto tj = parse(t);
  EXPECT_EQ(tj["results"]["fixed"], true);
  EXPECT_EQ(tj["results"]["output"]["side"], "dual");
  EXPECT_EQ(tensor_from_json(tj["results"]["output"], f).tensor, fixtures::b0(f));

  // failing stage: named on stderr and in the report, exit 1
  auto z = forge_cli("run --tensor '" + (dir / "zero.json").string() + "'");
  EXPECT_EQ(z.status, 1);
  EXPECT_NE(z.err.find("presentation"), std::string::npos);
  EXPECT_EQ(parse(z)["failed_stage"], "presentation");

  EXPECT_EQ(forge_cli("run --prime 103 --tensor '" + (dir / "b0.json").string() + "'").status, 2);
}

TEST_F(CliTest, InvolutionOnDegenerateFixtures) {
  auto r = forge_cli("involution --fixture scroll-general");
  ASSERT_EQ(r.status, 0) << r.err;
  auto j = parse(r);
  EXPECT_EQ(j["results"]["output_main_assumption"], false);
  EXPECT_EQ(j["results"]["output_cubic"], "0");
  EXPECT_EQ(forge_cli("involution").status, 2);
  EXPECT_EQ(forge_cli("involution --fixture nope").status, 2);
}

TEST_F(CliTest, ConfigErrors) {
  EXPECT_NE(forge_cli("").status, 0);
  EXPECT_NE(forge_cli("run --seed notanumber").status, 0);
  auto small = forge_cli("run --prime 7");
  EXPECT_EQ(small.status, 2);
  EXPECT_NE(small.err.find("56"), std::string::npos);
}

TEST(ReportJson, RoundTripWithMissingFields) {
  NodalReport r;
  r.seed = 9;
  r.prime = 103;
  r.mode = PipelineMode::Tensor;
  r.failed_stage = "solve";
  r.error = "boom";
  r.timings.push_back({"presentation", 0.5});
  auto j = to_json(r, "run", true);
  EXPECT_EQ(j["ok"], false);
  auto back = nodal_report_from_json(j);
  EXPECT_EQ(back.failed_stage, r.failed_stage);
  EXPECT_EQ(back.timings.size(), 1u);
  EXPECT_EQ(to_json(back, "run", true), j);
  j["schema"] = "other/9";
  EXPECT_THROW(nodal_report_from_json(j), std::invalid_argument);
}

TEST(ReportJson, InProcessMatchesExpectations) {
  EXPECT_TRUE(codes_report()["ok"].get<bool>());
  EXPECT_TRUE(chern_report()["ok"].get<bool>());
  EXPECT_TRUE(chern_report(4, 1, 4)["expectations"].empty());
  const PrimeField f(101);
  auto inv = involution_report({fixtures::scroll_projection_special(f), Side::Primal});
  EXPECT_EQ(inv["results"]["output_main_assumption"], false);
  Tensor334 zero(f);
  EXPECT_FALSE(involution_report({zero, Side::Primal})["ok"].get<bool>());
}
