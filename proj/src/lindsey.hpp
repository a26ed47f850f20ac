#ifndef EB_LINDSEY_HPP
#define EB_LINDSEY_HPP

#include <vector>

#include "histogram.hpp"

namespace eb {

// Poisson-regression density fit on histogram counts: the log of the expected
// bin count is a degree-J polynomial in the standardized bin midpoint
// x~ = (z - center)/scale. Coefficients are eta_0..eta_J on that basis;
// mapping back to the raw abscissa is exact.
struct LindseyFit {
  int degree = 0;
  std::vector<double> coefficients;  // size degree+1
  double center = 0.0;
  double scale = 1.0;
  bool converged = false;
  int iterations = 0;
  double deviance = 0.0;

  // Log expected count at raw abscissa z (the fitted log-density up to an
  // additive constant).
  double log_mean(double z) const;
  double fitted_mean(double z) const;
};

// Maximize the Poisson likelihood of the bin counts by IRLS. Standardization
// uses the count-weighted mean and SD of the midpoints. Zero-count bins are
// kept as observations. converged flags a max-abs coefficient update below
// 1e-8 within 50 iterations; non-convergence is returned, not thrown.
LindseyFit fit_lindsey(const Histogram& hist, int degree);

// Exact derivatives of the fitted log-density in the raw abscissa.
double log_density_deriv(const LindseyFit& fit, double z);
double log_density_second_deriv(const LindseyFit& fit, double z);

}  // namespace eb

#endif
