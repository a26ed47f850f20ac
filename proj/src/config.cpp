#include "config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace eb {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw Error(errc::config, "config: bad value '" + value + "' for key '" + key + "'");
}

long long parse_int(const std::string& key, const std::string& value) {
  long long v = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || p != value.data() + value.size()) bad_value(key, value);
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || p != value.data() + value.size()) bad_value(key, value);
  return v;
}

double parse_double(const std::string& key, const std::string& value) {
  double v = 0;
  auto [p, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || p != value.data() + value.size()) bad_value(key, value);
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  bad_value(key, value);
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) bad_value(key, value);
    out.push_back(static_cast<int>(parse_int(key, item)));
  }
  if (out.empty()) bad_value(key, value);
  return out;
}

std::string format_int_list(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

const std::vector<ConfigKeyInfo>& config_keys() {
  static const std::vector<ConfigKeyInfo> keys = {
      {"scenario", "1", "simulation scenario id 1..6 (selects the non-null effect law)"},
      {"null_units", "900", "number of null units (true beta = 0)"},
      {"nonnull_units", "100", "number of non-null units (beta from the scenario law)"},
      {"n_per_unit", "30", "observations per unit"},
      {"treated_per_unit", "15", "observations per unit with d = 1 (the trailing block)"},
      {"noise_sd", "1", "observation noise standard deviation"},
      {"seed", "1", "run seed; all randomness derives from it"},
      {"gibbs_iterations", "11000", "Gibbs iterations per unit"},
      {"gibbs_burn_in", "1000", "initial Gibbs iterations discarded"},
      {"histogram_width", "0.25", "score histogram bin width"},
      {"lindsey_degrees", "2,5", "polynomial degrees for the density fit (comma separated)"},
      {"sigma", "1", "score noise scale used by the correction"},
      {"output_dir", "out", "directory receiving all artifacts"},
      {"dump_draws", "false", "write each unit's retained beta draws under <output_dir>/draws/"},
      {"threads", "0", "worker threads for per-unit stages; 0 = hardware concurrency"},
  };
  return keys;
}

void Config::set(const std::string& key, const std::string& value) {
  if (key == "scenario") scenario = static_cast<int>(parse_int(key, value));
  else if (key == "null_units") null_units = static_cast<int>(parse_int(key, value));
  else if (key == "nonnull_units") nonnull_units = static_cast<int>(parse_int(key, value));
  else if (key == "n_per_unit") n_per_unit = static_cast<int>(parse_int(key, value));
  else if (key == "treated_per_unit") treated_per_unit = static_cast<int>(parse_int(key, value));
  else if (key == "noise_sd") noise_sd = parse_double(key, value);
  else if (key == "seed") seed = parse_u64(key, value);
  else if (key == "gibbs_iterations") gibbs_iterations = parse_u64(key, value);
  else if (key == "gibbs_burn_in") gibbs_burn_in = parse_u64(key, value);
  else if (key == "histogram_width") histogram_width = parse_double(key, value);
  else if (key == "lindsey_degrees") lindsey_degrees = parse_int_list(key, value);
  else if (key == "sigma") sigma = parse_double(key, value);
  else if (key == "output_dir") output_dir = value;
  else if (key == "dump_draws") dump_draws = parse_bool(key, value);
  else if (key == "threads") threads = static_cast<unsigned>(parse_u64(key, value));
  else throw Error(errc::config, "config: unknown key '" + key + "'");
}

std::string Config::get(const std::string& key) const {
  if (key == "scenario") return std::to_string(scenario);
  if (key == "null_units") return std::to_string(null_units);
  if (key == "nonnull_units") return std::to_string(nonnull_units);
  if (key == "n_per_unit") return std::to_string(n_per_unit);
  if (key == "treated_per_unit") return std::to_string(treated_per_unit);
  if (key == "noise_sd") return format_double(noise_sd);
  if (key == "seed") return std::to_string(seed);
  if (key == "gibbs_iterations") return std::to_string(gibbs_iterations);
  if (key == "gibbs_burn_in") return std::to_string(gibbs_burn_in);
  if (key == "histogram_width") return format_double(histogram_width);
  if (key == "lindsey_degrees") return format_int_list(lindsey_degrees);
  if (key == "sigma") return format_double(sigma);
  if (key == "output_dir") return output_dir;
  if (key == "dump_draws") return dump_draws ? "true" : "false";
  if (key == "threads") return std::to_string(threads);
  throw Error(errc::config, "config: unknown key '" + key + "'");
}

Scenario Config::to_scenario() const {
  Scenario sc;
  sc.id = scenario;
  sc.null_count = null_units;
  sc.nonnull_count = nonnull_units;
  sc.n_per_unit = n_per_unit;
  sc.treated_per_unit = treated_per_unit;
  sc.effect_law = Scenario::law_for_id(scenario);
  sc.noise_sd = noise_sd;
  sc.seed = seed;
  return sc;
}

void Config::validate() const {
  to_scenario().validate();
  if (gibbs_iterations <= gibbs_burn_in)
    throw Error(errc::config, "config: gibbs_iterations must exceed gibbs_burn_in");
  if (!(histogram_width > 0.0)) throw Error(errc::config, "config: histogram_width must be positive");
  if (lindsey_degrees.empty()) throw Error(errc::config, "config: lindsey_degrees is empty");
  for (int d : lindsey_degrees)
    if (d < 1) throw Error(errc::config, "config: lindsey degrees must be >= 1");
  if (!(sigma > 0.0)) throw Error(errc::config, "config: sigma must be positive");
  if (output_dir.empty()) throw Error(errc::config, "config: output_dir is empty");
}

Config parse_config_text(const std::string& text, const std::string& origin) {
  Config cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw Error(errc::config,
                  "config: " + origin + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw Error(errc::config, "config: " + origin + ":" + std::to_string(lineno) + ": empty key");
    cfg.set(key, value);
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(errc::missing_input, "config file not found: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

}  // namespace eb
