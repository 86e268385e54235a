#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "ehcr/scenario.hpp"

namespace ehcr {

/// Flat key/value configuration as read from a file: `key = value` per line,
/// `#` starts a comment. Recognised keys:
///
///   L, rate_primary, rate_secondary, bandwidth, p_pt_db, p_peak_db,
///   theta_p, delta, rho, pos_st, pos_sr, pos_sd, pos_pt, pos_pd
///
/// Positions are written as "x,y". Keys that are absent keep the value from
/// reference_scenario().
class Config {
 public:
  Config() = default;

  static Config parse(std::string_view text);
  static Config load(const std::filesystem::path& path);

  /// Later calls override earlier ones; unknown keys are rejected.
  void set(const std::string& key, const std::string& value);
  bool contains(const std::string& key) const { return values_.count(key) != 0; }
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

bool is_known_config_key(std::string_view key);

/// Applies the config on top of reference_scenario() and validates.
/// Throws ValidationError naming the field on any bad value.
Scenario build_scenario(const Config& config);

}  // namespace ehcr
