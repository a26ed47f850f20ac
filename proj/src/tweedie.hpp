#ifndef EB_TWEEDIE_HPP
#define EB_TWEEDIE_HPP

#include <span>
#include <vector>

#include "lindsey.hpp"

namespace eb {

// One corrected estimate: corrected_mean = raw_score + correction_term where
// the correction term is sigma^2 * l'(z) from the fitted marginal log-density.
// The posterior SD comes from sigma^2 * (1 + sigma^2 * l''(z)); a negative
// variance (possible in sparse tails) is clamped to zero and flagged.
struct CorrectionResult {
  double raw_score = 0.0;
  double correction_term = 0.0;
  double corrected_mean = 0.0;
  double corrected_sd = 0.0;
  bool variance_clamped = false;
};

CorrectionResult correct(double z, double sigma, const LindseyFit& fit);

// Element-wise, order-preserving. All inputs are validated up front so a bad
// score reports its index before any work runs. `threads` <= 1 runs inline.
std::vector<CorrectionResult> correct_batch(std::span<const double> scores, double sigma,
                                            const LindseyFit& fit, unsigned threads = 1);

}  // namespace eb

#endif
