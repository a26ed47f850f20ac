#include "tweedie.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"
#include "parallel.hpp"

namespace eb {

CorrectionResult correct(double z, double sigma, const LindseyFit& fit) {
  if (!std::isfinite(z)) throw_domain("correct: non-finite score");
  if (!(sigma > 0.0)) throw_domain("correct: sigma must be positive");

  CorrectionResult r;
  r.raw_score = z;
  double s2 = sigma * sigma;
  r.correction_term = s2 * log_density_deriv(fit, z);
  r.corrected_mean = r.raw_score + r.correction_term;
  double var = s2 * (1.0 + s2 * log_density_second_deriv(fit, z));
  if (var < 0.0) {
    r.variance_clamped = true;
    var = 0.0;
  }
  r.corrected_sd = std::sqrt(var);
  return r;
}

std::vector<CorrectionResult> correct_batch(std::span<const double> scores, double sigma,
                                            const LindseyFit& fit, unsigned threads) {
  if (!(sigma > 0.0)) throw_domain("correct_batch: sigma must be positive");
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i]))
      throw_domain("correct_batch: non-finite score at index " + std::to_string(i));
  }
  std::vector<CorrectionResult> out(scores.size());
  parallel_chunks(scores.size(), resolve_threads(threads), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) out[i] = correct(scores[i], sigma, fit);
  });
  return out;
}

}  // namespace eb
