#include "hcube/config.hpp"

#include <charconv>
#include <sstream>

#include "hcube/data.hpp"
#include "hcube/error.hpp"

namespace hcube {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text, const std::string& origin) {
  KeyValueConfig cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidInput(origin + ":" + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw InvalidInput(origin + ":" + std::to_string(line_no) + ": empty key");
    cfg.entries_[key] = trim(line.substr(eq + 1));
  }
  if (cfg.contains("version") && cfg.get_size("version", 0) != kConfigVersion) {
    throw InvalidInput(origin + ": unsupported config version " + cfg.entries_.at("version"));
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  double v = 0.0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidInput(origin_ + ": key \"" + key + "\" is not a number: " + s);
  }
  return v;
}

std::size_t KeyValueConfig::get_size(const std::string& key, std::size_t fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::size_t v = 0;
  const auto& s = it->second;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw InvalidInput(origin_ + ": key \"" + key + "\" is not a nonnegative integer: " + s);
  }
  return v;
}

Config Config::from(const KeyValueConfig& kv) {
  Config c;
  c.constants.c0 = kv.get_double("c0", c.constants.c0);
  c.constants.c1 = kv.get_double("c1", c.constants.c1);
  c.constants.c2 = kv.get_double("c2", c.constants.c2);
  c.constants.c3 = kv.get_double("c3", c.constants.c3);
  c.constants.kappa = kv.get_double("kappa", c.constants.kappa);
  c.trials = kv.get_size("trials", c.trials);
  c.seed = kv.get_size("seed", c.seed);
  c.threads = kv.get_size("threads", c.threads);
  c.acceptance_path = kv.get_string("acceptance", c.acceptance_path);
  c.validate();
  return c;
}

void Config::validate() const {
  const auto& k = constants;
  if (!(k.c0 > 0 && k.c1 > 0 && k.c2 > 0 && k.c3 > 0 && k.kappa > 0)) {
    throw InvalidInput("constants c0..c3 and kappa must all be positive");
  }
  if (trials < 2) throw InvalidInput("trials must be at least 2");
}

}  // namespace hcube
