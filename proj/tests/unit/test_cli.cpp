#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "smafv/cli.hpp"
#include "smafv/series_io.hpp"

namespace smafv {
namespace {

namespace fs = std::filesystem;

struct CliResult {
  int status;
  std::string out;
  std::string err;
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

TEST(Cli, List) {
  const auto r = cli({"list"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("rod-thermal-cycle\n"), std::string::npos);
  EXPECT_NE(r.out.find("patch-transform\n"), std::string::npos);
}

TEST(Cli, Check) {
  const auto r = cli({"check", "rod-low-T"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "ok rod-low-T (rod, 8x1, 240000 steps)\n");
  const auto p = cli({"check", "patch-waves", "--override", "dt=1e-3"});
  EXPECT_EQ(p.out, "ok patch-waves (patch, 14x14, 24000 steps)\n");
}

TEST(Cli, ConfigFileTarget) {
  const fs::path file = fs::temp_directory_path() / "smafv_cli_test.cfg";
  const auto printed = cli({"check", "rod-medium-T", "--print-config", "--override", "initial.theta=260"});
  ASSERT_EQ(printed.status, 0);
  std::ofstream(file) << "# edited copy\n" << printed.out;
  const auto r = cli({"check", file.string(), "--print-config"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, printed.out);
  EXPECT_NE(r.out.find("initial.theta = 260\n"), std::string::npos);
  fs::remove(file);
}

TEST(Cli, ErrorCodes) {
  auto r = cli({"check", "no-such-thing"});
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.err.rfind("error: unknown-scenario: ", 0), 0u) << r.err;
  r = cli({"check", "rod-low-T", "--override", "stepper.bogus=1"});
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.err.rfind("error: bad-override-key: ", 0), 0u) << r.err;
  r = cli({"check", "rod-low-T", "--override", "span=-1"});
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.err.rfind("error: invalid-config: time.span", 0), 0u) << r.err;
  r = cli({"frobnicate"});
  EXPECT_EQ(r.status, 2);
  EXPECT_EQ(r.err.rfind("error: usage: ", 0), 0u) << r.err;
  r = cli({});
  EXPECT_EQ(r.status, 2);
}

TEST(Cli, Equilibria) {
  const auto r = cli({"equilibria", "--dtheta", "0"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("convexity_threshold = 41.66666666666"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("e2 = 0.1154700538379"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("e2 = 0 stationary"), std::string::npos) << r.out;
}

TEST(Cli, RunWritesSeries) {
  const fs::path dir = fs::temp_directory_path() / "smafv_cli_run";
  fs::remove_all(dir);
  const auto r = cli({"run", "rod-high-T", "--out", dir.string(), "--override", "span=0.002", "--override",
                      "output.snapshots=0.002"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "wrote " + dir.string() + "\n");
  EXPECT_TRUE(fs::exists(dir / "run_info.txt"));
  const auto series = read_snapshot_series(dir);
  EXPECT_EQ(series.meta("run.scenario"), "rod-high-T");
  EXPECT_EQ(series.snapshots.size(), 1u);
  fs::remove_all(dir);
}

TEST(Cli, UnwritableOutput) {
  const fs::path blocker = fs::temp_directory_path() / "smafv_cli_blocker";
  fs::remove_all(blocker);
  std::ofstream(blocker) << "x";
  const auto r = cli({"run", "rod-high-T", "--out", (blocker / "sub").string(), "--override", "span=0.001",
                      "--override", "output.snapshots=0"});
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.err.rfind("error: io: ", 0), 0u) << r.err;
  fs::remove(blocker);
}

}  // namespace
}  // namespace smafv
