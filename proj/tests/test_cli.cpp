#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "specbound/cli.hpp"

namespace specbound {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("specbound_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

constexpr const char* kDiagQ2 = R"({"n": 2, "p": 2, "terms": [{"j": [2, 0], "c": 1}, {"j": [0, 2], "c": 1}]})";

TEST_F(CliTest, DemoPasses) {
  EXPECT_EQ(run({"demo"}), cli::kExitOk);
  EXPECT_NE(out_.str().find("all demo checks passed"), std::string::npos) << out_.str();
  EXPECT_EQ(out_.str().find("FAIL"), std::string::npos);
}

TEST_F(CliTest, BoundWritesJsonReport) {
  const std::string f = write("diag_q2.json", kDiagQ2);
  ASSERT_EQ(run({"bound", f, "--kmax", "4"}), cli::kExitOk) << err_.str();
  const auto doc = nlohmann::json::parse(out_.str());
  EXPECT_NEAR(doc["bracket"]["lower"].get<double>(), 1.0, 1e-12);
  EXPECT_EQ(doc["input"]["source"], "diag_q2.json");
}

TEST_F(CliTest, PowerSequenceOnlyReproducesClosedForm) {
  const std::string f = write("diag_q2.json", kDiagQ2);
  ASSERT_EQ(run({"bound", f, "--kmax", "2", "--methods", "hs,rho1,shopm,grid"}), cli::kExitOk) << err_.str();
  const auto doc = nlohmann::json::parse(out_.str());
  EXPECT_NEAR(doc["bracket"]["upper"].get<double>(), 1.2778862084925449, 1e-12);
  EXPECT_NEAR(doc["bracket"]["lower"].get<double>(), 1.0, 1e-12);
}

TEST_F(CliTest, BrokenInputExitsWithTwo) {
  const std::string f = write("broken.json", R"({"n": 2, "p": 2, "terms": [)");
  EXPECT_EQ(run({"bound", f}), cli::kExitInputError);
  EXPECT_NE(err_.str().find("parse error"), std::string::npos) << err_.str();
  EXPECT_EQ(run({"bound", (dir_ / "missing.json").string()}), cli::kExitInputError);
}

TEST_F(CliTest, UnknownFlagPrintsUsage) {
  const std::string f = write("diag_q2.json", kDiagQ2);
  EXPECT_EQ(run({"bound", f, "--frobnicate"}), cli::kExitInputError);
  EXPECT_NE(err_.str().find("Usage"), std::string::npos) << err_.str();
  EXPECT_EQ(run({}), cli::kExitInputError);
  EXPECT_EQ(run({"bound", f, "--methods", "nope"}), cli::kExitInputError);
  EXPECT_EQ(run({"bound", f, "--format", "xml"}), cli::kExitInputError);
}

TEST_F(CliTest, CsvAndTableFormats) {
  const std::string f = write("diag_q2.json", kDiagQ2);
  ASSERT_EQ(run({"rho1", f, "--format", "csv", "--kmax", "2"}), cli::kExitOk);
  EXPECT_EQ(out_.str().rfind("method,k,value,terminated_by\n", 0), 0u);
  EXPECT_NE(out_.str().find("rho1,2,1.2778862084925449,kmax"), std::string::npos) << out_.str();
  ASSERT_EQ(run({"bound", f, "--format", "table"}), cli::kExitOk);
  EXPECT_NE(out_.str().find("bracket:"), std::string::npos);
}

TEST_F(CliTest, StrictBudgetTruncation) {
  const std::string f = write("cubic.json", R"({"n": 3, "p": 3, "terms": [
      {"j": [3, 0, 0], "c": 1}, {"j": [1, 1, 1], "c": 2}, {"j": [0, 1, 2], "c": -1}]})");
  EXPECT_EQ(run({"rho1", f, "--budget", "30"}), cli::kExitOk);
  EXPECT_EQ(run({"rho1", f, "--budget", "30", "--strict"}), cli::kExitBudgetTruncated);
}

TEST_F(CliTest, SingleMethodCommands) {
  const std::string cubic = write("ones.json", R"({"dims": [2, 2, 2], "dense": [1, 0, 0, 0, 0, 0, 0, 1]})");
  ASSERT_EQ(run({"matrix3", cubic}), cli::kExitOk) << err_.str();
  auto doc = nlohmann::json::parse(out_.str());
  EXPECT_NEAR(doc["scalar_bounds"]["matrix_d3"].get<double>(), 1.0, 1e-10);

  const std::string quartic = write("q4.json", R"({"dims": [2, 2, 2, 2], "entries": [
      {"idx": [1, 1, 1, 1], "v": 1}, {"idx": [2, 2, 2, 2], "v": 0.5}]})");
  ASSERT_EQ(run({"cw", quartic}), cli::kExitOk) << err_.str();
  doc = nlohmann::json::parse(out_.str());
  EXPECT_NEAR(doc["scalar_bounds"]["collatz_wielandt"]["bound"].get<double>(), 1.0, 1e-9);

  const std::string map = write("map.json", R"({"n": 2, "m": 2, "p": 2, "coords": [
      {"n": 2, "p": 2, "terms": [{"j": [2, 0], "c": 1}]},
      {"n": 2, "p": 2, "terms": [{"j": [0, 2], "c": 1}]}]})");
  ASSERT_EQ(run({"rho2", map}), cli::kExitOk) << err_.str();
  doc = nlohmann::json::parse(out_.str());
  EXPECT_NEAR(doc["sequences"][0]["values"][3].get<double>(), std::pow(std::sqrt(2.0), 1.0 / 15.0), 1e-12);
  EXPECT_EQ(run({"bound", map}), cli::kExitInputError);
}

TEST_F(CliTest, ConvertRoundTrip) {
  const std::string f = write("diag_q2.json", kDiagQ2);
  const std::string t = (dir_ / "t.json").string();
  ASSERT_EQ(run({"convert", f, "-o", t}), cli::kExitOk) << err_.str();
  ASSERT_EQ(run({"convert", t}), cli::kExitOk) << err_.str();
  const auto doc = nlohmann::json::parse(out_.str());
  EXPECT_EQ(doc["terms"].size(), 2u);
  const std::string asym = write("asym.json", R"({"dims": [2, 2], "dense": [0, 1, 0, 0]})");
  EXPECT_EQ(run({"convert", asym}), cli::kExitInputError);
}

TEST_F(CliTest, OutputFileAndDeterminism) {
  const std::string f = write("cubic.json", R"({"n": 2, "p": 3, "terms": [
      {"j": [3, 0], "c": 1}, {"j": [2, 1], "c": -0.5}, {"j": [0, 3], "c": 2}]})");
  const std::string a = (dir_ / "a.json").string();
  const std::string b = (dir_ / "b.json").string();
  ASSERT_EQ(run({"bound", f, "--seed", "123", "-o", a}), cli::kExitOk);
  setenv("SPECBOUND_THREADS", "3", 1);
  ASSERT_EQ(run({"bound", f, "--seed", "123", "-o", b}), cli::kExitOk);
  unsetenv("SPECBOUND_THREADS");
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  };
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
}

TEST_F(CliTest, VersionAndHelp) {
  EXPECT_EQ(run({"--version"}), cli::kExitOk);
  EXPECT_EQ(out_.str().rfind("v", 0), 0u);
  EXPECT_EQ(run({"--help"}), cli::kExitOk);
  EXPECT_NE(out_.str().find("bound"), std::string::npos);
}

}  // namespace
}  // namespace specbound
