#include "ehcr/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "ehcr/errors.hpp"

namespace ehcr {

namespace {

constexpr std::array<std::string_view, 14> kKeys = {
    "L",       "rate_primary", "rate_secondary", "bandwidth", "p_pt_db",
    "p_peak_db", "theta_p",    "delta",          "rho",       "pos_st",
    "pos_sr",  "pos_sd",       "pos_pt",         "pos_pd"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ValidationError(key + ": expected a real number, got '" + std::string(text) + "'");
  }
  return v;
}

int parse_int(const std::string& key, std::string_view text) {
  text = trim(text);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw ValidationError(key + ": expected an integer, got '" + std::string(text) + "'");
  }
  return v;
}

Point parse_point(const std::string& key, std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) {
    throw ValidationError(key + ": expected \"x,y\", got '" + std::string(trim(text)) + "'");
  }
  return {parse_real(key, text.substr(0, comma)), parse_real(key, text.substr(comma + 1))};
}

}  // namespace

bool is_known_config_key(std::string_view key) {
  for (auto k : kKeys) {
    if (k == key) return true;
  }
  return false;
}

void Config::set(const std::string& key, const std::string& value) {
  if (!is_known_config_key(key)) throw ValidationError(key + ": unknown config key");
  values_[key] = value;
}

Config Config::parse(std::string_view text) {
  Config cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    cfg.set(std::string(trim(view.substr(0, eq))), std::string(trim(view.substr(eq + 1))));
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config: cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

Scenario build_scenario(const Config& config) {
  Scenario s = reference_scenario();
  for (const auto& [key, value] : config.values()) {
    if (key == "L") {
      s.num_primary_pairs = parse_int(key, value);
    } else if (key == "rate_primary") {
      s.rate_primary = parse_real(key, value);
    } else if (key == "rate_secondary") {
      s.rate_secondary = parse_real(key, value);
    } else if (key == "bandwidth") {
      s.bandwidth = parse_real(key, value);
    } else if (key == "p_pt_db") {
      s.power_pt_db = parse_real(key, value);
    } else if (key == "p_peak_db") {
      s.power_peak_db = parse_real(key, value);
    } else if (key == "theta_p") {
      s.theta_p = parse_real(key, value);
    } else if (key == "delta") {
      s.delta = parse_real(key, value);
    } else if (key == "rho") {
      s.path_loss_exp = parse_real(key, value);
    } else if (key == "pos_st") {
      s.pos_st = parse_point(key, value);
    } else if (key == "pos_sr") {
      s.pos_sr = parse_point(key, value);
    } else if (key == "pos_sd") {
      s.pos_sd = parse_point(key, value);
    } else if (key == "pos_pt") {
      s.pos_pt = parse_point(key, value);
    } else if (key == "pos_pd") {
      s.pos_pd = parse_point(key, value);
    }
  }
  return finalize(s);
}

}  // namespace ehcr
