#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include "json.hpp"
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "omlat/path.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kConfigs = OMLAT_CONFIG_DIR;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    root_ = fs::temp_directory_path() /
            ("omlat_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "omlat");
    out_.str("");
    err_.str("");
    return omlat::cli::run(args, out_, err_);
  }

  std::string dir(const std::string& name) const { return (root_ / name).string(); }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static std::vector<std::vector<double>> csv_rows(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
      std::vector<double> row;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
      rows.push_back(row);
    }
    return rows;
  }

  fs::path root_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST_F(Cli, SimulateIsByteReproducible) {
  const std::vector<std::string> common = {"simulate", "--config", kConfigs + "/truncation.cfg",
                                           "--seed", "7", "--steps", "50", "--ensemble", "2",
                                           "--slice", "i=0,1"};
  auto a = common;
  a.insert(a.end(), {"--out", dir("a")});
  auto b = common;
  b.insert(b.end(), {"--out", dir("b")});
  ASSERT_EQ(run(a), 0) << err_.str();
  ASSERT_EQ(run(b), 0) << err_.str();
  for (const char* f : {"path_0.csv", "path_1.csv", "slice_i0.csv", "slice_i1.csv"}) {
    ASSERT_TRUE(fs::exists(root_ / "a" / f)) << f;
    EXPECT_EQ(slurp(root_ / "a" / f), slurp(root_ / "b" / f)) << f;
  }
  const auto m = nlohmann::json::parse(slurp(root_ / "a" / "manifest.json"));
  EXPECT_EQ(m["subcommand"], "simulate");
  EXPECT_EQ(m["seed"], 7);
  EXPECT_TRUE(m.contains("config_hash"));
  EXPECT_TRUE(m.contains("tool_version"));
}

TEST_F(Cli, EmptyEnsembleWritesManifestOnly) {
  ASSERT_EQ(run({"simulate", "--config", kConfigs + "/truncation.cfg", "--ensemble", "0", "--out", dir("e")}),
            0);
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(root_ / "e")) names.push_back(e.path().filename().string());
  ASSERT_EQ(names.size(), 1u);
  EXPECT_EQ(names[0], "manifest.json");
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run({"verify", "nonsense", "--out", dir("x")}), omlat::cli::kExitUsage);
  EXPECT_EQ(run({"simulate", "--out", dir("x")}), omlat::cli::kExitUsage);
  EXPECT_EQ(run({"simulate", "--config", dir("missing.cfg"), "--out", dir("x")}), omlat::cli::kExitConfig);
  EXPECT_EQ(run({"simulate", "--config", kConfigs + "/scalar_linear.cfg", "--dt", "0.3", "--out", dir("x")}),
            omlat::cli::kExitConfig);
  EXPECT_EQ(run({"verify", "kl", "--lambda", "-1", "--out", dir("x")}), omlat::cli::kExitConfig);
  EXPECT_EQ(run({"--help"}), omlat::cli::kExitOk);
}

TEST_F(Cli, VerifyKlResiduals) {
  ASSERT_EQ(run({"verify", "kl", "--m", "20", "--quad", "401", "--out", dir("kl")}), 0) << err_.str();
  const auto rows = csv_rows(root_ / "kl" / "kl_spectrum.csv");
  ASSERT_EQ(rows.size(), 20u);
  for (const auto& r : rows) EXPECT_LE(r[4], 1e-10);
  EXPECT_TRUE(fs::exists(root_ / "kl" / "kl_checks.json"));
}

TEST_F(Cli, VerifyCocycle) {
  EXPECT_EQ(run({"verify", "cocycle", "--config", kConfigs + "/truncation.cfg", "--steps", "64", "--out",
                 dir("c")}),
            0)
      << err_.str();
  EXPECT_EQ(csv_rows(root_ / "c" / "cocycle.csv").size(), 2u);
}

TEST_F(Cli, VerifyTubeZeroAction) {
  ASSERT_EQ(run({"verify", "tube", "--config", kConfigs + "/scalar_linear.cfg", "--steps", "64", "--eps",
                 "0.4,0.3", "--samples", "2000", "--min-hits", "10", "--out", dir("t")}),
            0)
      << err_.str();
  const auto rows = csv_rows(root_ / "t" / "tube.csv");
  ASSERT_EQ(rows.size(), 2u);
  for (const auto& r : rows) {
    EXPECT_EQ(r[6], 1.0);
    EXPECT_EQ(r[3], 1.0);
  }
}

TEST_F(Cli, TubeWithTooFewSamplesIsPowerError) {
  EXPECT_EQ(run({"verify", "tube", "--config", kConfigs + "/scalar_linear.cfg", "--steps", "32", "--eps",
                 "0.01", "--samples", "50", "--out", dir("t")}),
            omlat::cli::kExitStatisticalPower);
}

TEST_F(Cli, MppThenOm) {
  ASSERT_EQ(run({"mpp", "--config", kConfigs + "/truncation.cfg", "--steps", "40", "--phi0", "const:0.2",
                 "--out", dir("m")}),
            0)
      << err_.str();
  const auto summary = nlohmann::json::parse(slurp(root_ / "m" / "mpp_summary.json"));
  const auto report = nlohmann::json::parse(slurp(root_ / "m" / "om_report.json"));
  EXPECT_FALSE(csv_rows(root_ / "m" / "convergence.csv").empty());
  ASSERT_EQ(run({"om", "--config", kConfigs + "/truncation.cfg", "--path", (root_ / "m" / "mpp_path.csv").string(),
                 "--out", dir("o")}),
            0)
      << err_.str();
  const auto again = nlohmann::json::parse(slurp(root_ / "o" / "om_report.json"));
  EXPECT_NEAR(again["total"].get<double>(), report["total"].get<double>(), 1e-12);
  (void)summary;
}

TEST_F(Cli, MppZeroBoundaryIsImmediate) {
  ASSERT_EQ(run({"mpp", "--config", kConfigs + "/truncation.cfg", "--steps", "20", "--phi0", "zero", "--out",
                 dir("z")}),
            0);
  const auto rows = csv_rows(root_ / "z" / "convergence.csv");
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0][0], 0.0);
}
