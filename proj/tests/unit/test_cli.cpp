#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "soliton/profile_io.hpp"

namespace fs = std::filesystem;
using soliton::tools::apply_config;
using soliton::tools::run_cli;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("soliton_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  int run(std::vector<std::string> args) {
    out.str("");
    err.str("");
    args.insert(args.begin(), {"--outdir", dir.string()});
    return run_cli(args, out, err);
  }
  std::string read(const std::string& name) const {
    std::ifstream in(dir / name, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir / name) << text; }

  fs::path dir;
  std::ostringstream out, err;
};

}  // namespace

TEST_F(Cli, SolveSigmaTwoClosedForm) {
  ASSERT_EQ(run({"solve", "--speed", "sigma-k", "--k", "2", "--n", "2", "--rmax", "3", "--out", "sigma2.csv"}), 0)
      << err.str();
  std::ifstream in(dir / "sigma2.csv");
  double worst = 0.0;
  for (const auto& row : soliton::read_profile_csv(in)) worst = std::max(worst, std::abs(row.residual));
  EXPECT_LE(worst, 1e-8);
  EXPECT_TRUE(fs::exists(dir / "sigma2.json"));
  EXPECT_EQ(run({"verify", "soliton", "--profile", "sigma2.csv", "--tol", "1e-8"}), 0) << out.str();
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({"solve", "--speed", "sigma-k", "--k", "5", "--n", "3", "--out", "x.csv"}), 2);
  EXPECT_NE(err.str().find("k"), std::string::npos);
  EXPECT_EQ(run({"solve", "--speed", "harmonic", "--n", "9", "--out", "x.csv"}), 2);
  EXPECT_EQ(run({"frobnicate"}), 2);
  EXPECT_EQ(run({}), 2);
  EXPECT_EQ(run({"verify", "soliton", "--profile", "missing.csv"}), 2);
}

TEST_F(Cli, HelpExitsZero) {
  EXPECT_EQ(run({"--help"}), 0);
  EXPECT_NE(out.str().find("solve"), std::string::npos);
}

TEST_F(Cli, CorruptedCsvReportsLine) {
  ASSERT_EQ(run({"solve", "--speed", "sigma-k", "--k", "2", "--n", "3", "--rmax", "1", "--out", "p.csv"}), 0);
  std::string text = read("p.csv");
  const auto third = text.find('\n', text.find('\n', text.find('\n') + 1) + 1);
  text.insert(third + 1, "0.5,oops\n");
  write("corrupted.csv", text);
  fs::copy_file(dir / "p.json", dir / "corrupted.json");
  EXPECT_EQ(run({"verify", "soliton", "--profile", "corrupted.csv"}), 2);
  EXPECT_NE(err.str().find("line 4"), std::string::npos) << err.str();
}

TEST_F(Cli, HarmonicSolveAndVerify) {
  ASSERT_EQ(run({"solve", "--speed", "harmonic", "--n", "3", "--out", "hm3.csv"}), 0) << err.str();
  const auto meta = nlohmann::json::parse(read("hm3.json"));
  EXPECT_EQ(meta["n"], 3);
  EXPECT_EQ(run({"verify", "convexity", "--profile", "hm3.csv", "--alpha", "auto", "--delta", "0.05", "--beta", "auto",
                 "--out", "conv.json"}),
            0)
      << out.str();
  const auto report = nlohmann::json::parse(read("conv.json"));
  EXPECT_EQ(report["checks"][0]["name"], "convexity estimate");
  EXPECT_EQ(run({"verify", "convexity", "--profile", "hm3.csv", "--alpha", "soon"}), 2);
}

TEST_F(Cli, VerifyFailureExitsOne) {
  ASSERT_EQ(run({"solve", "--speed", "harmonic", "--n", "3", "--rmax", "0.4", "--out", "hm3.csv"}), 0);
  EXPECT_EQ(run({"verify", "soliton", "--profile", "hm3.csv", "--tol", "1e-7"}), 1);
}

TEST_F(Cli, Cylinder) {
  EXPECT_EQ(run({"verify", "cylinder", "--out", "cyl.json"}), 0) << out.str();
  const auto j = nlohmann::json::parse(read("cyl.json"));
  EXPECT_EQ(j["checks"].size(), 3u);
  EXPECT_EQ(j["checks"][2]["tolerance"], 1e-9);
}

TEST_F(Cli, PlotAndDeterminism) {
  ASSERT_EQ(run({"solve", "--speed", "harmonic", "--n", "3", "--out", "hm3.csv"}), 0);
  ASSERT_EQ(run({"plot", "--in", "hm3.csv", "--barriers", "w3,w5", "--out", "fig3.svg"}), 0) << err.str();
  const std::string svg = read("fig3.svg");
  EXPECT_EQ(svg.rfind("<svg", 0) == 0 || svg.find("<svg") != std::string::npos, true);
  EXPECT_NE(svg.find("w3"), std::string::npos);
  EXPECT_NE(svg.find("w5"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  ASSERT_EQ(run({"plot", "--in", "hm3.csv", "--barriers", "w3,w5", "--out", "fig3b.svg"}), 0);
  EXPECT_EQ(read("fig3b.svg"), svg);

  ASSERT_EQ(run({"solve", "--speed", "sigma-k", "--k", "2", "--n", "2", "--out", "s2.csv"}), 0);
  EXPECT_EQ(run({"plot", "--in", "s2.csv", "--revolve", "--out", "fig1.svg"}), 0) << err.str();
  const std::string csv = read("s2.csv");
  ASSERT_EQ(run({"solve", "--speed", "sigma-k", "--k", "2", "--n", "2", "--out", "s2.csv"}), 0);
  EXPECT_EQ(read("s2.csv"), csv);

  write("empty.csv", "");
  EXPECT_EQ(run({"plot", "--in", "empty.csv", "--out", "e.svg"}), 2);
}

TEST_F(Cli, Props) {
  EXPECT_EQ(run({"props", "--speed", "harmonic", "--n", "4", "--samples", "1000", "--seed", "42", "--out", "p.json"}), 0);
  const auto j = nlohmann::json::parse(read("p.json"));
  EXPECT_EQ(j["total_failures"], 0);
  EXPECT_EQ(run({"props", "--speed", "quotient", "--k", "3", "--l", "1", "--n", "3", "--samples", "200"}), 0);
  EXPECT_EQ(run({"props", "--speed", "product", "--n", "3", "--factors", "sigma-k:2,harmonic", "--weights", "0.5,0.5",
                 "--samples", "200"}),
            0)
      << err.str();
  EXPECT_EQ(run({"props", "--speed", "product", "--n", "3", "--factors", "sigma-k:2", "--weights", "0.5,0.5"}), 2);
}

TEST_F(Cli, BarriersAndPicard) {
  EXPECT_EQ(run({"barriers", "--n", "3", "--names", "w1,w3", "--out", "b.csv"}), 0) << err.str();
  EXPECT_EQ(run({"picard", "--n", "3", "--grid", "257", "--tol", "1e-12", "--out", "log.json"}), 0) << err.str();
  const auto j = nlohmann::json::parse(read("log.json"));
  EXPECT_TRUE(j["converged"].get<bool>());
  EXPECT_FALSE(j["fixed_point_csv_path"].get<std::string>().empty());
}

TEST_F(Cli, SweepWritesOneFilePerDimension) {
  ASSERT_EQ(run({"solve", "--speed", "harmonic", "--sweep", "n=3..6", "--rmax", "0.3", "--out", "hm.csv"}), 0)
      << err.str();
  for (int n = 3; n <= 6; ++n) EXPECT_TRUE(fs::exists(dir / ("hm_n" + std::to_string(n) + ".csv")));
}

TEST_F(Cli, ConfigFileFillsMissingFlags) {
  const auto args = apply_config({"solve", "--n", "4"}, R"({"speed":"harmonic","solve":{"n":3,"out":"c.csv"}})");
  const std::vector<std::string> expected{"solve", "--n", "4", "--speed", "harmonic", "--out", "c.csv"};
  for (const auto& e : expected) EXPECT_NE(std::find(args.begin(), args.end(), e), args.end()) << e;
  EXPECT_EQ(std::find(args.begin(), args.end(), "3"), args.end());
  write("cfg.json", R"({"solve":{"speed":"sigma-k","k":2,"n":3,"rmax":1,"out":"from_config.csv"}})");
  EXPECT_EQ(run({"--config", (dir / "cfg.json").string(), "solve"}), 0) << err.str();
  EXPECT_TRUE(fs::exists(dir / "from_config.csv"));
  write("bad.json", "{");
  EXPECT_EQ(run({"--config", (dir / "bad.json").string(), "solve"}), 2);
}
