#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "hcube/quantize.hpp"

namespace hcube {

// key=value text, one entry per line; '#' starts a comment. A "version"
// key, when present, must be 1.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(const std::string& text, const std::string& origin = "<config>");
  static KeyValueConfig load(const std::filesystem::path& path);

  bool contains(const std::string& key) const { return entries_.contains(key); }
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::size_t get_size(const std::string& key, std::size_t fallback) const;
  void set(const std::string& key, const std::string& value) { entries_[key] = value; }

  const std::map<std::string, std::string>& entries() const { return entries_; }

 private:
  std::map<std::string, std::string> entries_;
  std::string origin_;
};

inline constexpr int kConfigVersion = 1;

// Run configuration for the command-line tool.
struct Config {
  PlanConstants constants;
  std::size_t trials = 200;  // Monte Carlo trials for width estimates
  std::uint64_t seed = 1;
  std::size_t threads = 0;   // 0: leave HC_THREADS / hardware default
  std::string acceptance_path;

  // Keys: c0 c1 c2 c3 kappa trials seed threads acceptance.
  static Config from(const KeyValueConfig& kv);
  // Throws InvalidInput unless every constant is positive.
  void validate() const;
};

}  // namespace hcube
