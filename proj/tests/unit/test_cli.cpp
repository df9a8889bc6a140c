#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "srl/cli.hpp"
#include "srl/csv.hpp"

using namespace srl;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("srl_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("SRL_SEED");
  }
  void TearDown() override {
    fs::remove_all(dir_);
    unsetenv("SRL_SEED");
  }
  fs::path write_config(const std::string& text) {
    const fs::path p = dir_ / "config.yaml";
    std::ofstream(p) << text;
    return p;
  }
  fs::path dir_;
};

const char* kValid = R"(experiment:
  id: clitest
  reps: 3
  base: {p: 120, r: 4}
  sweep: {kind: dimension, p: [100, 140], r: [3]}
  methods:
    - {name: MS, kind: ms}
    - {name: LASSO, kind: lasso}
output: {workers: 1}
)";

}  // namespace

TEST_F(CliTest, RunWritesTwoCsvFiles) {
  const fs::path cfg = write_config(kValid);
  const CliRun r = cli({"run", "--config", cfg.string(), "--out-dir", (dir_ / "out").string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::string records = slurp(dir_ / "out" / "clitest_records.csv");
  const std::string summary = slurp(dir_ / "out" / "clitest_summary.csv");
  EXPECT_EQ(records.rfind(csv::kRecordsHeader, 0), 0u);
  EXPECT_EQ(summary.rfind(csv::kSummaryHeader, 0), 0u);
  EXPECT_EQ(std::count(records.begin(), records.end(), '\n'), 1 + 2 * 2 * 3);
  EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 1 + 2 * 2);
  EXPECT_EQ(records.back(), '\n');
  // One nominal-SNR line per grid point on stderr.
  std::istringstream lines(r.err);
  std::string line;
  int points = 0;
  while (std::getline(lines, line)) {
    const auto j = nlohmann::json::parse(line);
    EXPECT_TRUE(j.contains("nominal_snr"));
    ++points;
  }
  EXPECT_EQ(points, 2);
}

TEST_F(CliTest, SameSeedSameFiles) {
  const fs::path cfg = write_config(kValid);
  ASSERT_EQ(cli({"run", "--config", cfg.string(), "--seed", "7", "--omit-timing", "--out-dir", (dir_ / "a").string()}).code, 0);
  ASSERT_EQ(cli({"run", "--config", cfg.string(), "--seed", "7", "--omit-timing", "--workers", "3", "--out-dir",
                 (dir_ / "b").string()})
                .code,
            0);
  EXPECT_EQ(slurp(dir_ / "a" / "clitest_records.csv"), slurp(dir_ / "b" / "clitest_records.csv"));
  EXPECT_EQ(slurp(dir_ / "a" / "clitest_summary.csv"), slurp(dir_ / "b" / "clitest_summary.csv"));
  ASSERT_EQ(cli({"run", "--config", cfg.string(), "--seed", "8", "--omit-timing", "--out-dir", (dir_ / "c").string()}).code, 0);
  EXPECT_NE(slurp(dir_ / "a" / "clitest_records.csv"), slurp(dir_ / "c" / "clitest_records.csv"));
}

TEST_F(CliTest, EnvironmentSeedAndPrecedence) {
  const fs::path cfg = write_config(kValid);
  setenv("SRL_SEED", "7", 1);
  ASSERT_EQ(cli({"run", "--config", cfg.string(), "--omit-timing", "--out-dir", (dir_ / "env").string()}).code, 0);
  unsetenv("SRL_SEED");
  ASSERT_EQ(cli({"run", "--config", cfg.string(), "--seed", "7", "--omit-timing", "--out-dir", (dir_ / "flag").string()}).code, 0);
  EXPECT_EQ(slurp(dir_ / "env" / "clitest_records.csv"), slurp(dir_ / "flag" / "clitest_records.csv"));
  setenv("SRL_SEED", "abc", 1);
  const CliRun bad = cli({"run", "--config", cfg.string(), "--out-dir", (dir_ / "x").string()});
  EXPECT_EQ(bad.code, kExitValidation);
  EXPECT_EQ(nlohmann::json::parse(bad.err)["field"], "SRL_SEED");
}

TEST_F(CliTest, ValidationErrorNamesField) {
  std::string text = kValid;
  text.replace(text.find("r: 4}"), 5, "r: 4, k: 1.0}");
  const fs::path cfg = write_config(text);
  const CliRun r = cli({"run", "--config", cfg.string()});
  EXPECT_EQ(r.code, kExitValidation);
  const auto j = nlohmann::json::parse(r.err);
  EXPECT_EQ(j["error"], "validation");
  EXPECT_EQ(j["field"], "experiment.base.k");
  EXPECT_EQ(j["line"], 4);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"run"}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"verify", "nope"}).code, kExitUsage);
  EXPECT_EQ(cli({"preset", "fig-r-sweep", "--format", "json"}).code, kExitUsage);
  EXPECT_EQ(cli({"preset", "fig-r-sweep", "--reps", "0"}).code, kExitUsage);
  const CliRun r = cli({"run"});
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"], "usage");
  EXPECT_EQ(cli({"--help"}).code, kExitOk);
}

TEST_F(CliTest, MissingConfigIsValidationError) {
  EXPECT_EQ(cli({"run", "--config", (dir_ / "absent.yaml").string()}).code, kExitValidation);
}

TEST_F(CliTest, UnknownPresetAndInfeasibleScale) {
  EXPECT_EQ(cli({"preset", "fig-nothing"}).code, kExitValidation);
  EXPECT_EQ(cli({"preset", "fig-r-sweep", "--scale-p", "0.001"}).code, kExitValidation);
}

TEST_F(CliTest, PresetSmokeRun) {
  const CliRun r = cli({"preset", "fig-spike-sweep", "--reps", "1", "--workers", "1", "--scale-p", "0.1", "--out-dir",
                        dir_.string()});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const std::string records = slurp(dir_ / "fig-spike-sweep_records.csv");
  // 2 r values × 7 spike counts × 3 methods, one replication each.
  EXPECT_EQ(std::count(records.begin(), records.end(), '\n'), 1 + 2 * 7 * 3);
}

TEST_F(CliTest, PrintConfigRoundTrips) {
  const fs::path cfg = write_config(kValid);
  const CliRun first = cli({"run", "--config", cfg.string(), "--print-config"});
  ASSERT_EQ(first.code, 0);
  const fs::path again = dir_ / "again.yaml";
  std::ofstream(again) << first.out;
  EXPECT_EQ(cli({"run", "--config", again.string(), "--print-config"}).out, first.out);
}

TEST_F(CliTest, VerifySuite) {
  const CliRun r = cli({"verify", "projection"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("PASS projection"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}
