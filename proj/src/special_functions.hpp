#ifndef EB_SPECIAL_FUNCTIONS_HPP
#define EB_SPECIAL_FUNCTIONS_HPP

#include <span>
#include <vector>

namespace eb {

// Standard normal density.
double std_normal_pdf(double x);

// Standard normal CDF. Absolute error below 1e-12; throws eb::Error(domain)
// on non-finite input.
double std_normal_cdf(double x);

// Inverse standard normal CDF for p in (0,1). Rational approximation refined
// with one Newton step on the CDF; absolute error below 1e-9 for
// p in [1e-10, 1-1e-10]. Throws eb::Error(domain) for p <= 0 or p >= 1.
double std_normal_quantile(double p);

// Student-t CDF with nu >= 1 degrees of freedom, via the regularized
// incomplete beta function (continued fraction). Absolute error below 1e-10.
double student_t_cdf(double t, unsigned nu);

// Regularized incomplete beta I_x(a, b); exposed for reuse.
double ibeta_reg(double a, double b, double x);

// Linear-interpolation quantile of a sorted ascending sample:
// h = q*(m-1), result = s[floor(h)] + frac(h)*(s[floor(h)+1] - s[floor(h)]).
double percentile_sorted(std::span<const double> sorted, double q);

// Same rule on an unsorted sample (sorts a copy).
double percentile(std::span<const double> samples, double q);

}  // namespace eb

#endif
