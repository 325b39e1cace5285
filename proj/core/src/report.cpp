#include <string>

#include "hcube/error.hpp"
#include "hcube/verify.hpp"
#include "json.hpp"

namespace hcube {

using nlohmann::json;

std::string report_to_json(const VerificationReport& report, int indent) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json entry;
    entry["name"] = c.name;
    entry["parameters"] = json::object();
    for (const auto& [key, value] : c.parameters) entry["parameters"][key] = value;
    entry["seeds"] = c.seeds;
    entry["observed"] = c.observed;
    entry["threshold"] = c.threshold;
    entry["pass"] = c.pass;
    entry["wall_time_s"] = c.wall_time_s;
    if (!c.note.empty()) entry["note"] = c.note;
    checks.push_back(std::move(entry));
  }
  json doc;
  doc["checks"] = std::move(checks);
  return doc.dump(indent);
}

VerificationReport report_from_json(const std::string& text) {
  VerificationReport report;
  try {
    const json doc = json::parse(text);
    for (const auto& entry : doc.at("checks")) {
      CheckResult c;
      c.name = entry.at("name").get<std::string>();
      for (const auto& [key, value] : entry.at("parameters").items()) {
        c.parameters[key] = value.get<double>();
      }
      c.seeds = entry.at("seeds").get<std::vector<std::uint64_t>>();
      c.observed = entry.at("observed").get<double>();
      c.threshold = entry.at("threshold").get<double>();
      c.pass = entry.at("pass").get<bool>();
      c.wall_time_s = entry.at("wall_time_s").get<double>();
      if (entry.contains("note")) c.note = entry.at("note").get<std::string>();
      report.checks.push_back(std::move(c));
    }
  } catch (const json::exception& e) {
    throw LoadError(std::string("malformed verification report: ") + e.what());
  }
  return report;
}

}  // namespace hcube
