#ifndef EB_PIPELINE_HPP
#define EB_PIPELINE_HPP

#include <string>
#include <vector>

#include "config.hpp"

namespace eb {

enum class Stage { simulate, fit, score, density, correct, report };

const char* to_string(Stage s);
Stage stage_from_string(const std::string& name);

// Per-degree correction summary for the report.
struct DegreeReport {
  int degree = 0;
  bool converged = false;
  double deviance = 0.0;
  std::size_t bins = 0;
  double variance_clamp_fraction = 0.0;
  double raw_variance = 0.0;
  double corrected_variance = 0.0;
  double null_corrected_mean = 0.0;     // units with id <= null_units
  double nonnull_corrected_mean = 0.0;  // remaining units
  double separation = 0.0;              // nonnull - null corrected means
};

struct PipelineReport {
  std::size_t n_units = 0;
  double robust_mean = 0.0, robust_sd = 0.0;
  double prob_mean = 0.0, prob_sd = 0.0;
  double prob_clamp_fraction = 0.0;
  std::vector<DegreeReport> degrees;
};

// Stages communicate only through files under config.output_dir:
//   simulate -> units.csv
//   fit      -> summaries.csv (+ draws/unit_<id>.csv when dump_draws)
//   score    -> scores.csv (robust_ratio and prob_transform rows)
//   density  -> histogram_d<J>.csv, fit_d<J>.csv per degree
//   correct  -> corrections_d<J>.csv per degree
//   report   -> report.txt, figures/*.svg, figures/correction_curve_d<J>.csv
// Failures surface as eb::StageError with the stage name; outputs are written
// atomically so a failed stage leaves no partial artifact.
PipelineReport run_stage(const Config& config, Stage stage);

// All stages in order; returns the report-stage summary.
PipelineReport run_pipeline(const Config& config);

}  // namespace eb

#endif
