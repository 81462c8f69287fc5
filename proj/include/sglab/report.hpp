#pragma once

#include <map>
#include <string>

#include <nlohmann/json.hpp>

namespace sglab {

/// Outcome of one residual/property check.
///
/// `residuals` holds every checked quantity. A residual listed in
/// `tolerances` must not exceed it; one listed in `floors` must reach it
/// (negative controls). `metrics` carries informational numbers only.
struct VerificationReport {
  std::string name;
  std::string inputs_digest;
  std::map<std::string, double> residuals;
  std::map<std::string, double> tolerances;
  std::map<std::string, double> floors;
  std::map<std::string, double> metrics;
  bool pass = false;
  double wall_time_s = 0.0;

  VerificationReport& at_most(const std::string& key, double value, double tolerance);
  VerificationReport& at_least(const std::string& key, double value, double floor);
  VerificationReport& metric(const std::string& key, double value);

  /// Recomputes `pass` from the bounds; NaN residuals fail.
  bool evaluate();
};

nlohmann::json to_json(const VerificationReport& report);

/// Stable 64-bit FNV-1a digest of a resolved key/value configuration, hex.
std::string inputs_digest(const std::map<std::string, std::string>& config);

}  // namespace sglab
