#include "sglab/report.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

namespace sglab {

VerificationReport& VerificationReport::at_most(const std::string& key, double value,
                                                double tolerance) {
  residuals[key] = value;
  tolerances[key] = tolerance;
  evaluate();
  return *this;
}

VerificationReport& VerificationReport::at_least(const std::string& key, double value,
                                                 double floor) {
  residuals[key] = value;
  floors[key] = floor;
  evaluate();
  return *this;
}

VerificationReport& VerificationReport::metric(const std::string& key, double value) {
  metrics[key] = value;
  return *this;
}

bool VerificationReport::evaluate() {
  bool ok = true;
  for (const auto& [key, value] : residuals) {
    if (std::isnan(value)) ok = false;
    if (auto it = tolerances.find(key); it != tolerances.end() && !(value <= it->second))
      ok = false;
    if (auto it = floors.find(key); it != floors.end() && !(value >= it->second)) ok = false;
  }
  pass = ok;
  return pass;
}

namespace {

nlohmann::json number_map(const std::map<std::string, double>& m) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : m) {
    if (std::isfinite(v))
      j[k] = v;
    else
      j[k] = std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  }
  return j;
}

}  // namespace

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json j;
  j["name"] = report.name;
  j["inputs_digest"] = report.inputs_digest;
  j["residuals"] = number_map(report.residuals);
  j["tolerances"] = number_map(report.tolerances);
  if (!report.floors.empty()) j["floors"] = number_map(report.floors);
  if (!report.metrics.empty()) j["metrics"] = number_map(report.metrics);
  j["pass"] = report.pass;
  j["wall_time_s"] = report.wall_time_s;
  return j;
}

std::string inputs_digest(const std::map<std::string, std::string>& config) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto feed = [&hash](const std::string& s) {
    for (unsigned char ch : s) {
      hash ^= ch;
      hash *= 0x100000001b3ULL;
    }
  };
  for (const auto& [k, v] : config) {
    feed(k);
    feed("=");
    feed(v);
    feed("\n");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace sglab
