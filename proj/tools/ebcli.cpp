// ebcli: command-line front end for the ebayes shared library. Talks to the
// core exclusively through the C API; stages communicate through files in the
// configured output directory, so any stage can be rerun or replaced by an
// external tool.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ebayes/ebayes.h"

namespace {

int exit_code_for(eb_status status) {
  switch (status) {
    case EB_OK: return 0;
    case EB_ERROR_MISSING_INPUT: return 2;
    case EB_ERROR_CONFIG: return 3;
    default: return 4;
  }
}

int fail(const std::string& verb, eb_status status) {
  std::fprintf(stderr, "error: code=%d status=%s verb=%s message=\"%s\"\n",
               exit_code_for(status), eb_status_name(status), verb.c_str(), eb_last_error());
  return exit_code_for(status);
}

std::string config_keys_help() {
  std::string out = "Config keys (key = value lines; every key has a default):\n";
  size_t n = eb_config_key_count();
  for (size_t i = 0; i < n; ++i) {
    const char* name = nullptr;
    const char* def = nullptr;
    const char* help = nullptr;
    if (eb_config_key_info(i, &name, &def, &help) != EB_OK) continue;
    out += "  ";
    out += name;
    out += " (default ";
    out += def;
    out += "): ";
    out += help;
    out += "\n";
  }
  return out;
}

struct ConfigHandle {
  eb_config* cfg = nullptr;
  ~ConfigHandle() { eb_config_free(cfg); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ebcli: local empirical Bayes correction pipeline (library version " +
               std::string(eb_version()) + ")"};
  app.footer(config_keys_help());
  app.require_subcommand(0, 1);

  std::string config_path;
  std::vector<std::string> overrides;

  const std::vector<std::string> verbs = {"simulate", "fit",      "score", "density",
                                          "correct",  "pipeline", "report"};
  const std::vector<std::string> descriptions = {
      "generate scenario data -> units.csv",
      "run the per-unit Gibbs sampler on units.csv -> summaries.csv",
      "turn summaries into standard-normal scores -> scores.csv",
      "bin scores and fit the Poisson log-density -> histogram_d<J>.csv, fit_d<J>.csv",
      "apply the Tweedie correction -> corrections_d<J>.csv",
      "run every stage in order",
      "render report.txt and figures/ from existing artifacts",
  };
  for (size_t i = 0; i < verbs.size(); ++i) {
    CLI::App* sub = app.add_subcommand(verbs[i], descriptions[i]);
    sub->add_option("-c,--config", config_path, "config file (key = value lines)");
    sub->add_option("-s,--set", overrides,
                    "override a config key, e.g. --set seed=42 (repeatable)");
  }

  CLI11_PARSE(app, argc, argv);

  if (app.get_subcommands().empty()) {
    std::fprintf(stderr, "error: code=3 status=config_error verb=none message=\"no verb given; "
                         "run with --help\"\n");
    return 3;
  }
  const std::string verb = app.get_subcommands().front()->get_name();

  ConfigHandle handle;
  eb_status st =
      config_path.empty() ? eb_config_create(&handle.cfg) : eb_config_load(config_path.c_str(), &handle.cfg);
  if (st != EB_OK) return fail(verb, st);

  for (const std::string& kv : overrides) {
    size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr,
                   "error: code=3 status=config_error verb=%s message=\"override '%s' is not "
                   "key=value\"\n",
                   verb.c_str(), kv.c_str());
      return 3;
    }
    st = eb_config_set(handle.cfg, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
    if (st != EB_OK) return fail(verb, st);
  }

  st = (verb == "pipeline") ? eb_pipeline_run(handle.cfg) : eb_stage_run(handle.cfg, verb.c_str());
  if (st != EB_OK) return fail(verb, st);
  return 0;
}
