#ifndef EB_CSV_IO_HPP
#define EB_CSV_IO_HPP

#include <string>
#include <vector>

#include "gibbs.hpp"
#include "histogram.hpp"
#include "lindsey.hpp"
#include "score_transform.hpp"
#include "tweedie.hpp"

namespace eb {

// Floats serialize with 17 significant digits so every artifact round-trips
// bit-exactly. Writers go through a temp file and rename, so a failed stage
// never leaves a partial artifact behind.
std::string format_double17(double v);

void write_units_csv(const std::string& path, const std::vector<UnitData>& units);
std::vector<UnitData> read_units_csv(const std::string& path);

void write_summaries_csv(const std::string& path, const std::vector<PosteriorSummary>& summaries);
std::vector<PosteriorSummary> read_summaries_csv(const std::string& path);

void write_scores_csv(const std::string& path, const std::vector<ScoreRecord>& scores);
std::vector<ScoreRecord> read_scores_csv(const std::string& path);

// One row per bin: left_edge, midpoint, count, fitted_mean.
void write_histogram_csv(const std::string& path, const Histogram& hist, const LindseyFit& fit);
Histogram read_histogram_csv(const std::string& path);

// Coefficient sidecar: degree, center, scale, eta0..etaJ, converged, deviance.
void write_fit_csv(const std::string& path, const LindseyFit& fit);
LindseyFit read_fit_csv(const std::string& path);

void write_corrections_csv(const std::string& path, const std::vector<std::int64_t>& unit_ids,
                           const std::vector<CorrectionResult>& results);
struct CorrectionRow {
  std::int64_t unit_id;
  CorrectionResult result;
};
std::vector<CorrectionRow> read_corrections_csv(const std::string& path);

// Single-column dump of one unit's retained draws.
void write_draws_csv(const std::string& path, std::span<const double> draws);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace eb

#endif
