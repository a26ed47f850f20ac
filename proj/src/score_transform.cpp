#include "score_transform.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "special_functions.hpp"

namespace eb {

const char* to_string(ScoreSource s) {
  switch (s) {
    case ScoreSource::t_transform: return "t_transform";
    case ScoreSource::prob_transform: return "prob_transform";
    case ScoreSource::robust_ratio: return "robust_ratio";
  }
  return "unknown";
}

ScoreSource score_source_from_string(std::string_view s) {
  if (s == "t_transform") return ScoreSource::t_transform;
  if (s == "prob_transform") return ScoreSource::prob_transform;
  if (s == "robust_ratio") return ScoreSource::robust_ratio;
  throw_domain("unknown score source: " + std::string(s));
}

double t_to_z(double t, unsigned nu) {
  // Evaluate through the lower tail so the probability keeps floating-point
  // resolution; the upper tail follows by symmetry.
  if (t > 0.0) return -std_normal_quantile(student_t_cdf(-t, nu));
  if (t == 0.0) return 0.0;
  return std_normal_quantile(student_t_cdf(t, nu));
}

ProbToZ prob_to_z(double p, std::uint64_t n_draws) {
  if (n_draws == 0) throw_domain("prob_to_z: n_draws must be positive");
  if (!(p >= 0.0 && p <= 1.0)) throw_domain("prob_to_z: p outside [0,1]");
  double lo = 1.0 / (2.0 * static_cast<double>(n_draws));
  double hi = 1.0 - lo;
  double pc = std::clamp(p, lo, hi);
  ProbToZ r;
  r.clamped = (pc != p);
  r.z = std_normal_quantile(pc);
  return r;
}

double robust_sd(std::span<const double> draws) {
  if (draws.size() < 2) throw_domain("robust_sd: need at least 2 draws");
  std::vector<double> s(draws.begin(), draws.end());
  std::sort(s.begin(), s.end());
  double spread = percentile_sorted(s, 0.84) - percentile_sorted(s, 0.16);
  if (!(spread > 0.0))
    throw_domain("robust_sd: degenerate spread, 16th and 84th percentiles coincide");
  return 0.5 * spread;
}

double posterior_score(double median, double s_r) {
  if (!(s_r > 0.0)) throw_domain("posterior_score: robust SD must be positive");
  return median / s_r;
}

}  // namespace eb
