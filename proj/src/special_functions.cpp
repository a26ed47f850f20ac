#include "special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace eb {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kInvSqrt2Pi = 0.3989422804014326779;

// Acklam's rational approximation to the normal quantile. Relative error
// below 1.15e-9 over (0,1); the Newton step in std_normal_quantile takes it
// to machine precision.
double acklam(double p) {
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double p_low = 0.02425;

  if (p < p_low) {
    double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // central region, p in [p_low, 0.5]
  double q = p - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

// Continued fraction for the incomplete beta (modified Lentz).
double ibeta_cf(double a, double b, double x) {
  const int max_iter = 400;
  const double eps = 1e-16;
  const double fpmin = 1e-300;

  double qab = a + b;
  double qap = a + 1.0;
  double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) return h;
  }
  throw_numeric("incomplete beta continued fraction did not converge");
}

}  // namespace

double std_normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double std_normal_cdf(double x) {
  if (!std::isfinite(x)) throw_domain("std_normal_cdf: non-finite input");
  return 0.5 * std::erfc(-x * kInvSqrt2);
}

double std_normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw_domain("std_normal_quantile: p must lie strictly in (0,1), got " + std::to_string(p));
  double x = (p <= 0.5) ? acklam(p) : -acklam(1.0 - p);
  // One Newton step on the CDF.
  double err = std_normal_cdf(x) - p;
  x -= err / std_normal_pdf(x);
  return x;
}

double ibeta_reg(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                    a * std::log(x) + b * std::log1p(-x);
  double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * ibeta_cf(a, b, x) / a;
  }
  return 1.0 - front * ibeta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, unsigned nu) {
  if (nu == 0) throw_domain("student_t_cdf: degrees of freedom must be >= 1");
  if (!std::isfinite(t)) throw_domain("student_t_cdf: non-finite input");
  if (t == 0.0) return 0.5;
  double n = static_cast<double>(nu);
  double x = n / (n + t * t);
  double p = 0.5 * ibeta_reg(0.5 * n, 0.5, x);
  return (t > 0.0) ? 1.0 - p : p;
}

double percentile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw_domain("percentile: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw_domain("percentile: q outside [0,1]");
  const std::size_t m = sorted.size();
  if (m == 1) return sorted[0];
  double h = q * static_cast<double>(m - 1);
  auto lo = static_cast<std::size_t>(h);
  if (lo >= m - 1) return sorted[m - 1];
  double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double percentile(std::span<const double> samples, double q) {
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  return percentile_sorted(s, q);
}

}  // namespace eb
