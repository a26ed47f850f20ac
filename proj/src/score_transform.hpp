#ifndef EB_SCORE_TRANSFORM_HPP
#define EB_SCORE_TRANSFORM_HPP

#include <cstdint>
#include <span>
#include <string_view>

namespace eb {

// Provenance of a standard-normal-scale score. Kept on every record so
// reports can separate the transform routes.
enum class ScoreSource { t_transform, prob_transform, robust_ratio };

const char* to_string(ScoreSource s);
ScoreSource score_source_from_string(std::string_view s);

struct ScoreRecord {
  std::int64_t unit_id = 0;
  double score = 0.0;
  ScoreSource source = ScoreSource::robust_ratio;
  bool clamped = false;  // only ever true for prob_transform
};

// z = Phi^-1(F_nu(t)): maps a t statistic onto the standard-normal scale.
double t_to_z(double t, unsigned nu);

struct ProbToZ {
  double z = 0.0;
  bool clamped = false;
};

// z = Phi^-1(p) for an MCMC tail frequency estimated from n_draws draws.
// p is clamped into [1/(2*n_draws), 1 - 1/(2*n_draws)] first, so raw
// frequencies of exactly 0 or 1 stay finite; the flag records whether the
// clamp changed p.
ProbToZ prob_to_z(double p, std::uint64_t n_draws);

// Half the distance between the 16th and 84th percentiles. Equals the SD
// exactly for a normal law; insensitive to tail outliers. The per-unit usage
// (this unit's posterior draws) is the one wired into the pipeline; a pooled
// across-unit spread would be computed by the caller from pooled scores.
double robust_sd(std::span<const double> draws);

// Posterior median over robust SD.
double posterior_score(double median, double s_r);

}  // namespace eb

#endif
