#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path kDir = fs::temp_directory_path() / "spindeq_cli_test";

int run(const std::string& args, const std::string& env = "") {
  fs::create_directories(kDir);
  const std::string cmd = env + " " + std::string(SPINDEQ_BINARY) + " " + args + " > " +
                          (kDir / "stdout.txt").string() + " 2> " + (kDir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string path(const char* name) { return (kDir / name).string(); }

}  // namespace

TEST(Usage, UnknownSubcommandOrFlag) {
  EXPECT_EQ(run("bogus"), 2);
  EXPECT_EQ(run("precession --no-such-flag"), 2);
  EXPECT_EQ(run("verify-dequantization --case sideways"), 2);
  EXPECT_EQ(run(""), 2);
}

TEST(Usage, HelpExitsZero) { EXPECT_EQ(run("--help"), 0); }

TEST(InputErrors, BadExpressionExitsTwo) {
  EXPECT_EQ(run("verify-dequantization --case bosonic --hamiltonian 'p^2/2+'"), 2);
  EXPECT_NE(slurp(kDir / "stderr.txt").find("error"), std::string::npos);
}

TEST(InputErrors, NonlinearClassicalFlowIsUnsupported) {
  EXPECT_EQ(run("propagate-classical --case bosonic --hamiltonian 'p^2/2+q^4/4'"), 2);
}

TEST(Verify, GrassmannPasses) {
  EXPECT_EQ(run("verify-dequantization --case grassmann"), 0);
  EXPECT_NE(slurp(kDir / "stdout.txt").find("PASS"), std::string::npos);
}

TEST(Verify, ReportIsVersionedJson) {
  EXPECT_EQ(run("verify-dequantization --case coadjoint --report " + path("deq.json")), 0);
  const json j = json::parse(slurp(path("deq.json")));
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_EQ(j.at("subcommand"), "verify-dequantization");
  EXPECT_TRUE(j.at("pass").get<bool>());
  EXPECT_FALSE(j.at("checks").empty());
}

TEST(Failures, ImpossibleToleranceExitsOneAndNamesChecks) {
  EXPECT_EQ(run("check-dirac --samples 5 --tolerance 1e-30 --so3-tolerance 1e-30"), 1);
  EXPECT_NE(slurp(kDir / "stderr.txt").find("so3_relations"), std::string::npos);
}

TEST(Quantum, CsvSweep) {
  EXPECT_EQ(run("propagate-quantum --b 0,0,1 --slices 125,250,500,1000 --out " + path("q.csv")), 0);
  std::istringstream csv(slurp(path("q.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "n,max_error_vs_oracle,wall_time");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST(Precession, CsvTrajectory) {
  EXPECT_EQ(run("precession --steps 10 --out " + path("p.csv")), 0);
  std::istringstream csv(slurp(path("p.csv")));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "t,theta,phi,eta,H");
}

TEST(Seeds, DeterministicAndEnvironmentFallback) {
  EXPECT_EQ(run("check-dirac --samples 20 --seed 5 --out " + path("a.json")), 0);
  EXPECT_EQ(run("check-dirac --samples 20 --out " + path("b.json"), "SPINDEQ_SEED=5"), 0);
  EXPECT_EQ(run("check-dirac --samples 20 --seed 6 --out " + path("c.json")), 0);
  auto checks = [](const char* f) { return json::parse(slurp(path(f))).at("checks"); };
  const json a = json::parse(slurp(path("a.json")));
  EXPECT_EQ(a.at("parameters").at("seed"), "5");
  EXPECT_EQ(checks("a.json"), checks("b.json"));
  EXPECT_NE(checks("a.json"), checks("c.json"));
}

TEST(Classical, CoadjointReport) {
  EXPECT_EQ(run("propagate-classical --case coadjoint --muB 1.3 --out " + path("c.json")), 0);
  const json j = json::parse(slurp(path("c.json")));
  EXPECT_EQ(j.at("details").at("operator"), "-Lambda_phi*muB");
  EXPECT_TRUE(j.at("details").at("spectrum_real").get<bool>());
}
