#ifndef EB_CONFIG_HPP
#define EB_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "simulation.hpp"

namespace eb {

// Pipeline configuration. The text format is one `key = value` per line,
// `#` comments, blank lines ignored; every key has a default, so an empty
// file (or no file) is a valid configuration.
struct Config {
  int scenario = 1;
  int null_units = 900;
  int nonnull_units = 100;
  int n_per_unit = 30;
  int treated_per_unit = 15;
  double noise_sd = 1.0;
  std::uint64_t seed = 1;
  std::uint64_t gibbs_iterations = 11000;
  std::uint64_t gibbs_burn_in = 1000;
  double histogram_width = 0.25;
  std::vector<int> lindsey_degrees = {2, 5};
  double sigma = 1.0;
  std::string output_dir = "out";
  bool dump_draws = false;
  unsigned threads = 0;  // 0 = hardware concurrency

  // Throws eb::Error(config) for unknown keys or unparsable values.
  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;

  Scenario to_scenario() const;
  void validate() const;
};

struct ConfigKeyInfo {
  const char* name;
  const char* default_value;
  const char* help;
};

// Registry backing --help and the C API key listing.
const std::vector<ConfigKeyInfo>& config_keys();

// Missing file -> eb::Error(missing_input); parse problems -> eb::Error(config).
Config load_config(const std::string& path);

// Parse the `key = value` text body (used by load_config and tests).
Config parse_config_text(const std::string& text, const std::string& origin = "<string>");

}  // namespace eb

#endif
