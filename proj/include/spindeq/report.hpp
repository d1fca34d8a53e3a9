#pragma once

// Machine-readable run reports (JSON) and CSV helpers.

#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spindeq/check.hpp"

namespace spindeq {

inline constexpr int kReportSchemaVersion = 1;

struct RunReport {
  int schema_version = kReportSchemaVersion;
  std::string subcommand;
  std::map<std::string, std::string> parameters;
  std::vector<CheckResult> checks;
  double timing_seconds = 0;
  nlohmann::json details = nlohmann::json::object();

  bool passed() const { return all_pass(checks); }

  std::vector<std::string> failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks) {
      if (!c.pass) out.push_back(c.name);
    }
    return out;
  }

  void append(const std::string& prefix, const std::vector<CheckResult>& more) {
    for (auto c : more) {
      c.name = prefix.empty() ? c.name : prefix + "/" + c.name;
      checks.push_back(std::move(c));
    }
  }
};

namespace detail {

// JSON has no infinities or NaN; they travel as strings.
inline nlohmann::json number_to_json(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

inline double number_from_json(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  throw std::invalid_argument("bad number in report: " + s);
}

}  // namespace detail

inline void to_json(nlohmann::json& j, const CheckResult& c) {
  j = {{"name", c.name},
       {"expected", c.expected},
       {"actual", c.actual},
       {"residual", detail::number_to_json(c.residual)},
       {"tolerance", c.tolerance},
       {"pass", c.pass}};
}

inline void from_json(const nlohmann::json& j, CheckResult& c) {
  j.at("name").get_to(c.name);
  j.at("expected").get_to(c.expected);
  j.at("actual").get_to(c.actual);
  c.residual = detail::number_from_json(j.at("residual"));
  j.at("tolerance").get_to(c.tolerance);
  j.at("pass").get_to(c.pass);
}

inline void to_json(nlohmann::json& j, const RunReport& r) {
  j = {{"schema_version", r.schema_version},
       {"subcommand", r.subcommand},
       {"parameters", r.parameters},
       {"checks", r.checks},
       {"timing_seconds", r.timing_seconds},
       {"pass", r.passed()},
       {"details", r.details}};
}

inline void from_json(const nlohmann::json& j, RunReport& r) {
  j.at("schema_version").get_to(r.schema_version);
  if (r.schema_version != kReportSchemaVersion) {
    throw std::invalid_argument("unsupported report schema version " + std::to_string(r.schema_version));
  }
  j.at("subcommand").get_to(r.subcommand);
  j.at("parameters").get_to(r.parameters);
  j.at("checks").get_to(r.checks);
  j.at("timing_seconds").get_to(r.timing_seconds);
  r.details = j.value("details", nlohmann::json::object());
}

inline bool operator==(const CheckResult& a, const CheckResult& b) {
  auto same = [](double x, double y) { return x == y || (std::isnan(x) && std::isnan(y)); };
  return a.name == b.name && a.expected == b.expected && a.actual == b.actual && same(a.residual, b.residual) &&
         a.tolerance == b.tolerance && a.pass == b.pass;
}

inline bool operator==(const RunReport& a, const RunReport& b) {
  return a.schema_version == b.schema_version && a.subcommand == b.subcommand && a.parameters == b.parameters &&
         a.checks == b.checks && a.timing_seconds == b.timing_seconds && a.details == b.details;
}

inline void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << "\n";
  }
}

}  // namespace spindeq
