#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include <json.hpp>

#ifndef QKDS_CLI_PATH
#error "QKDS_CLI_PATH must point at the qkds executable"
#endif

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

/// Runs the CLI with stderr folded into the captured output when asked.
Result cli(const std::string& args, bool with_stderr = false) {
  const std::string cmd = std::string(QKDS_CLI_PATH) + " " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  while (size_t n = fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  auto p = fs::temp_directory_path() / ("qkds_cli_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, EvalText) {
  const auto r = cli("eval --mu 0.1 --eta 0.1 --attack cbs");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("key_fraction:   0.468681"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("quotient_vs_bs: 5.44542"), std::string::npos) << r.out;
}

TEST(Cli, EvalLosslessBs) {
  const auto r = cli("eval --mu 0.1 --eta 1.0 --attack bs --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["p_succ"].get<double>(), 0.0);
}

TEST(Cli, EvalCbsfJson) {
  const auto r = cli("eval --mu 0.1 --eta 0.1 --attack cbsf --n 2 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["quotient"].get<double>(), 2.5, 0.1);
  EXPECT_EQ(j["n"].get<int>(), 2);
  EXPECT_TRUE(j["gamma_sq"].is_null());
}

TEST(Cli, UsageErrors) {
  auto r = cli("eval --mu -0.1 --eta 0.1 --attack cbs", true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("mu"), std::string::npos);
  r = cli("eval --mu 0.1 --eta 1.2 --attack cbs", true);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("eta"), std::string::npos);
  EXPECT_EQ(cli("eval --mu 0.1 --eta 0.1 --attack cbsf").code, 2);
  EXPECT_EQ(cli("eval --mu 0.1 --eta 0.1 --attack warp").code, 2);
  EXPECT_EQ(cli("eval --mu abc --eta 0.1 --attack cbs").code, 2);
  EXPECT_EQ(cli("eval --mu 0.1 --eta 0.1").code, 2);
  EXPECT_EQ(cli("nonsense").code, 2);
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("--help").code, 0);
}

TEST(Cli, Calibrate) {
  auto r = cli("calibrate --mu 0.1 --eta 0.1 --attack cbs --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out)["gamma_sq"].get<double>(), 0.058257, 1e-6);
  r = cli("calibrate --mu 0.1 --eta 0.1 --attack acbs --format json");
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(r.out)["gamma_sq"].get<double>(), 0.0988598, 1e-7);
  r = cli("calibrate --attack cbsf --n 1 --mu 0.1 --eta 0.25 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["t"].get<double>(), 0.5, 1e-12);
  EXPECT_LT(std::abs(j["residual"].get<double>()), 1e-12);
  r = cli("calibrate --attack cbsf --n 1 --mu 0.1 --eta 0.25");
  EXPECT_NE(r.out.find("t:"), std::string::npos);
  EXPECT_NE(r.out.find("residual:"), std::string::npos);
}

TEST(Cli, SolverFailureExitsThree) {
  const auto r = cli("calibrate --attack cbsf --n 3 --mu 0.1 --eta 1", true);
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("Infeasible"), std::string::npos);
}

TEST(Cli, SimulateAgreesAndIsDeterministic) {
  const std::string args = "simulate --mu 0.1 --eta 0.1 --attack cbs --trials 1000000 --seed 42";
  const auto a = cli(args + " --format json");
  ASSERT_EQ(a.code, 0);
  const auto j = nlohmann::json::parse(a.out);
  for (const char* k : {"p_b_nonvac", "p_succ", "key_fraction", "p_dc"}) {
    EXPECT_LT(std::abs(j[k]["z"].get<double>()), 3.0) << k;
  }
  EXPECT_EQ(cli(args + " --format json").out, a.out);
  EXPECT_EQ(cli("simulate --mu 0.1 --eta 0.1 --attack cbs --trials 1000000 --seed 42 --format json").out,
            cli("simulate --mu 0.1 --eta 0.1 --attack cbs --trials 1000000 --seed 42 --format json").out);
  const auto single = cli("simulate --mu 0.1 --eta 0.1 --attack cbs --trials 200000 --seed 3");
  ::setenv("QKDS_THREADS", "1", 1);
  const auto serial = cli("simulate --mu 0.1 --eta 0.1 --attack cbs --trials 200000 --seed 3");
  ::unsetenv("QKDS_THREADS");
  EXPECT_EQ(single.out, serial.out);
  EXPECT_EQ(cli("simulate --mu 0.1 --eta 0.1 --attack cbs --trials 0 --seed 1").code, 2);
  EXPECT_EQ(cli("simulate --mu 0.1 --eta 0.1 --attack cbs --trials 10").code, 2);
}

TEST(Cli, SweepToFile) {
  const auto dir = scratch();
  const auto out = dir / "fig2.csv";
  const auto r = cli("sweep --mu 0.1 --eta-grid 0.001:1:200 --attacks cbs,bs,pns --output " + out.string());
  ASSERT_EQ(r.code, 0);
  const auto csv = slurp(out);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "attack,mu,eta,n,gamma_sq,t,block_prob,p_b_nonvac,p_succ,key_fraction,p_dc,quotient");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 200);
  // A second run is byte-identical.
  ASSERT_EQ(cli("sweep --mu 0.1 --eta-grid 0.001:1:200 --attacks cbs,bs,pns").out, csv);
  fs::remove_all(dir);
}

TEST(Cli, SweepErrors) {
  EXPECT_EQ(cli("sweep --mu '' --eta 0.1 --attacks cbs").code, 2);
  EXPECT_EQ(cli("sweep --mu 0.1 --eta 0.1 --attacks cbsf").code, 2);
  const auto dir = scratch();
  const auto r = cli("sweep --mu 0.1 --eta 0.1 --attacks cbs --output " + (dir / "no" / "x.csv").string(), true);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find((dir / "no").string()), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "no"));
  fs::remove_all(dir);
}

TEST(Cli, SweepJsonWithBadCell) {
  const auto r = cli("sweep --mu 0.1 --eta 0.5,1 --attacks cbsf --n 2 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 2u);
  EXPECT_FALSE(j[0].contains("error"));
  EXPECT_TRUE(j[1].contains("error"));
}

TEST(Cli, Regions) {
  const auto r = cli("regions --mu-grid 0.1,2.0 --eta-grid 0.01,0.1,0.8");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 7);
  EXPECT_NE(r.out.find("0.10000000000000001,0.10000000000000001,"), std::string::npos);
}

TEST(Cli, ScenarioRoundTrip) {
  const auto dir = scratch();
  const auto scen = dir / "s.json";
  const auto a = cli("eval --mu 0.1 --eta 0.3 --attack acbs --format json --save-scenario " + scen.string());
  ASSERT_EQ(a.code, 0);
  const auto b = cli("run --scenario " + scen.string());
  EXPECT_EQ(b.code, 0);
  EXPECT_EQ(a.out, b.out);
  std::ofstream(dir / "bad.json") << R"({"mu": 0.1, "eta": 0.1, "attack": "cbs", "extra": 1})";
  EXPECT_EQ(cli("run --scenario " + (dir / "bad.json").string()).code, 2);
  EXPECT_EQ(cli("run --scenario " + (dir / "missing.json").string()).code, 1);
  fs::remove_all(dir);
}

TEST(Cli, BundledScenarios) {
  for (const auto& entry : fs::directory_iterator(QKDS_SCENARIO_DIR)) {
    const auto r = cli("run --scenario " + entry.path().string());
    EXPECT_EQ(r.code, 0) << entry.path();
    EXPECT_FALSE(r.out.empty()) << entry.path();
  }
}
