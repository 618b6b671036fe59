#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "sml/dsl.hpp"
#include "sml/superop.hpp"

namespace sml::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string corpus(const std::string& file) { return std::string(SML_CORPUS_DIR) + "/" + file; }

Result run_on(const std::string& command, const std::string& file, const std::string& format = "json") {
  return run({command, {corpus(file)}, format, {}});
}

TEST(Cli, SuperparticleIsElliptic) {
  Result r = run_on("analyze-operator", "01_superparticle.sml");
  ASSERT_EQ(r.exit_code, kExitPositive) << r.error;
  json j = json::parse(r.report);
  EXPECT_EQ(j["schema"], 1);
  const json& op = j["files"][0]["results"][0];
  EXPECT_EQ(op["verdict"], "Elliptic");
  EXPECT_EQ(op["symbol"], json::parse(R"([["0", "i*k1"], ["-k1^2", "0"]])"));
  EXPECT_EQ(op["inverse"]["matrix"], json::parse(R"([["0", "-1/k1^2"], ["(-i)/k1", "0"]])"));
}

TEST(Cli, BodyDeltasCannotBeMultiplied) {
  Result r = run_on("check-multiply", "13_multiply_bodies.sml");
  ASSERT_EQ(r.exit_code, kExitNegative) << r.error;
  json j = json::parse(r.report);
  const json& res = j["files"][0]["results"][0];
  EXPECT_EQ(res["verdict"], "not-guaranteed");
  ASSERT_EQ(res["witnesses"].size(), 1u);
  EXPECT_EQ(res["witnesses"][0]["x"], json::parse(R"(["0", "0"])"));
}

TEST(Cli, ParseErrorsAreUsageErrorsWithLocation) {
  fs::path bad = fs::temp_directory_path() / "sml_cli_bad.sml";
  std::ofstream(bad) << "domain U dim 1|1;\noperator P on U order 1 { (1|1): d[x9]; }\n";
  Result r = run({"analyze-operator", {bad.string()}, "json", {}});
  EXPECT_EQ(r.exit_code, kExitUsage);
  EXPECT_TRUE(r.report.empty());
  EXPECT_NE(r.error.find(bad.string() + ":2:"), std::string::npos) << r.error;
  EXPECT_EQ(run({"analyze-operator", {"/nonexistent.sml"}, "json", {}}).exit_code, kExitUsage);
  EXPECT_EQ(run({"bogus", {corpus("01_superparticle.sml")}, "json", {}}).exit_code, kExitUsage);
  EXPECT_EQ(run_on("propagate", "01_superparticle.sml").exit_code, kExitUsage);
}

TEST(Cli, ExitCodesFollowVerdicts) {
  EXPECT_EQ(run_on("analyze-operator", "23_degenerate.sml").exit_code, kExitNegative);
  EXPECT_EQ(run_on("analyze-operator", "25_parametric.sml").exit_code, kExitUnknown);
  EXPECT_EQ(run_on("check-pullback", "10_pullback_point_ok.sml").exit_code, kExitPositive);
  EXPECT_EQ(run_on("check-pullback", "11_pullback_point_bad.sml").exit_code, kExitNegative);
  EXPECT_EQ(run_on("validate-atlas", "19_atlas_invalid.sml").exit_code, kExitNegative);
  EXPECT_EQ(run_on("propagate", "03_wess_zumino_builtin.sml").exit_code, kExitPositive);
}

TEST(Cli, VerdictsReproduceLibraryCalls) {
  std::ifstream in(corpus("30_kitchen_sink.sml"));
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Document doc = parse_document(text);
  json j = json::parse(run_on("analyze-operator", "30_kitchen_sink.sml").report);
  for (const auto& res : j["files"][0]["results"]) {
    const auto* op = doc.find<OperatorDecl>(res["name"].get<std::string>());
    ASSERT_NE(op, nullptr);
    EXPECT_EQ(res["verdict"], to_string(ellipticity_verdict(principal_symbol(op->op)).tag));
  }
}

TEST(Cli, NameSelection) {
  Result r = run({"analyze-operator", {corpus("26_compose_pair.sml")}, "json", {"A"}});
  EXPECT_EQ(r.exit_code, kExitPositive);
  EXPECT_EQ(json::parse(r.report)["files"][0]["results"].size(), 1u);
  EXPECT_EQ(run({"analyze-operator", {corpus("26_compose_pair.sml")}, "json", {"nope"}}).exit_code, kExitUsage);
}

TEST(Cli, TextFormatRendersSameReport) {
  Result r = run_on("analyze-operator", "01_superparticle.sml", "text");
  EXPECT_NE(r.report.find("verdict: Elliptic"), std::string::npos);
  EXPECT_NE(r.report.find("schema: 1"), std::string::npos);
}

TEST(Cli, ByteDeterministicOnCorpus) {
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(SML_CORPUS_DIR)) files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  for (const auto& c : commands()) {
    for (const auto& f : files) {
      for (const char* format : {"json", "text"}) {
        Result a = run({c, {f}, format, {}});
        Result b = run({c, {f}, format, {}});
        ASSERT_EQ(a.report, b.report) << c << " " << f;
        ASSERT_EQ(a.exit_code, b.exit_code);
        ASSERT_EQ(a.error, b.error);
      }
    }
  }
}

}  // namespace
}  // namespace sml::cli
