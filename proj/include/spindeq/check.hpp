#pragma once

// One named pass/fail entry of a verification report.

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

namespace spindeq {

struct CheckResult {
  std::string name;
  std::string expected;
  std::string actual;
  double residual = 0;
  double tolerance = 0;  // 0 for exact symbolic checks
  bool pass = false;
};

inline std::string format_number(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

/// |actual - expected| <= tolerance.
inline CheckResult numeric_check(std::string name, double expected, double actual, double tolerance) {
  const double r = std::abs(actual - expected);
  return {std::move(name), format_number(expected), format_number(actual), r, tolerance,
          std::isfinite(r) && r <= tolerance};
}

/// A residual that should vanish.
inline CheckResult residual_check(std::string name, double residual, double tolerance) {
  return {std::move(name), "0", format_number(residual), residual, tolerance,
          std::isfinite(residual) && residual <= tolerance};
}

/// Exact comparison of two printed values.
inline CheckResult exact_check(std::string name, std::string expected, std::string actual) {
  const bool same = expected == actual;
  return {std::move(name), std::move(expected), std::move(actual), same ? 0.0 : 1.0, 0, same};
}

inline bool all_pass(const std::vector<CheckResult>& checks) {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

}  // namespace spindeq
