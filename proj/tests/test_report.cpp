#include <cstdio>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "spindeq/report.hpp"

using namespace spindeq;
using nlohmann::json;

namespace {

RunReport sample() {
  RunReport r;
  r.subcommand = "check-dirac";
  r.parameters = {{"samples", "100"}, {"seed", "7"}};
  r.checks = {residual_check("a", 1e-17, 1e-9), exact_check("b", "x", "x"), numeric_check("c", 1, 1.5, 0.1)};
  r.timing_seconds = 0.125;
  r.details["operator"] = "-Lambda_phi*muB";
  return r;
}

std::string temp_path(const char* name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST(Checks, Constructors) {
  EXPECT_TRUE(residual_check("r", 0, 0).pass);
  EXPECT_FALSE(residual_check("r", 1e-8, 1e-9).pass);
  EXPECT_FALSE(residual_check("r", std::nan(""), 1.0).pass);
  EXPECT_FALSE(exact_check("e", "1", "2").pass);
  CheckResult n = numeric_check("n", 2.0, 2.5, 0.5);
  EXPECT_TRUE(n.pass);
  EXPECT_EQ(n.residual, 0.5);
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
}

TEST(Report, PassedAndFailures) {
  RunReport r = sample();
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.failures(), std::vector<std::string>{"c"});
  r.checks.pop_back();
  EXPECT_TRUE(r.passed());
}

TEST(Report, AppendPrefixesNames) {
  RunReport r;
  r.append("quantum", {residual_check("x", 0, 0)});
  r.append("", {residual_check("y", 0, 0)});
  EXPECT_EQ(r.checks[0].name, "quantum/x");
  EXPECT_EQ(r.checks[1].name, "y");
}

TEST(Report, JsonRoundTrip) {
  RunReport r = sample();
  const json j = r;
  EXPECT_EQ(j.at("schema_version"), kReportSchemaVersion);
  EXPECT_EQ(j.at("pass"), false);
  EXPECT_EQ(j.get<RunReport>(), r);
  EXPECT_EQ(json::parse(j.dump()).get<RunReport>(), r);
}

TEST(Report, NonFiniteResidualsTravelAsStrings) {
  RunReport r = sample();
  r.checks.push_back(residual_check("inf", INFINITY, 1));
  r.checks.push_back(residual_check("nan", std::nan(""), 1));
  const json j = r;
  EXPECT_EQ(j.at("checks")[3].at("residual"), "inf");
  EXPECT_EQ(j.at("checks")[4].at("residual"), "nan");
  EXPECT_EQ(json::parse(j.dump()).get<RunReport>(), r);
}

TEST(Report, SchemaVersionMismatchRejected) {
  json j = sample();
  j["schema_version"] = kReportSchemaVersion + 1;
  EXPECT_THROW(j.get<RunReport>(), std::invalid_argument);
  json k = sample();
  k["checks"][0]["residual"] = "tiny";
  EXPECT_THROW(k.get<RunReport>(), std::invalid_argument);
}

TEST(Files, JsonAndCsvWritten) {
  const std::string jp = temp_path("spindeq_report_test.json");
  write_json(jp, sample());
  std::ifstream in(jp);
  EXPECT_EQ(json::parse(in).get<RunReport>(), sample());

  const std::string cp = temp_path("spindeq_report_test.csv");
  write_csv(cp, {"n", "err"}, {{125, 0.5}, {250, 0.25}});
  std::ifstream csv(cp);
  std::string text((std::istreambuf_iterator<char>(csv)), {});
  EXPECT_EQ(text, "n,err\n125,0.5\n250,0.25\n");
  std::remove(jp.c_str());
  std::remove(cp.c_str());
  EXPECT_THROW(write_csv("/nonexistent/dir/x.csv", {"a"}, {}), std::runtime_error);
}
