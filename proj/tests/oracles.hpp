// Test-only oracles, independent of the library implementations they check:
// erf by Maclaurin series, normal tail by quadrature of the density, t CDF by
// adaptive Simpson quadrature, quantiles by bisection, a derivative-free
// Poisson-likelihood maximizer, and KS statistics.
#ifndef EB_TESTS_ORACLES_HPP
#define EB_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

// ---- generic adaptive Simpson quadrature ----

inline double simpson(const std::function<double(double)>& f, double a, double m, double b,
                      double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double eps,
                                   int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = simpson(f, a, lm, m, fa, flm, fm);
  double right = simpson(f, m, rm, b, fm, frm, fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps = 1e-14) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = simpson(f, a, m, b, fa, fm, fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, eps, 40);
}

// ---- standard normal ----

// Maclaurin series for erf, reliable for |x| <= ~3 in long double.
inline long double erf_series(long double x) {
  const long double two_over_sqrt_pi = 1.1283791670955125738961589031L;
  long double term = x, sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x * x / n;
    long double add = term / (2 * n + 1);
    sum += add;
    if (std::fabs((double)add) < 1e-22L * std::fabs((double)sum)) break;
  }
  return two_over_sqrt_pi * sum;
}

inline double normal_pdf(double x) { return 0.39894228040143267794 * std::exp(-0.5 * x * x); }

// Upper tail P(Z > x) for x >= 0 by quadrature on the shifted integrand:
// tail(x) = pdf(x) * integral_0^inf exp(-x s - s^2/2) ds. No cancellation.
inline double normal_tail(double x) {
  double hi = 60.0 / std::max(x, 1.0);
  auto g = [x](double s) { return std::exp(-x * s - 0.5 * s * s); };
  return normal_pdf(x) * integrate(g, 0.0, hi, 1e-17);
}

inline double normal_cdf(double x) {
  if (x > 2.0) return 1.0 - normal_tail(x);
  if (x < -2.0) return normal_tail(-x);
  return 0.5 * (1.0 + static_cast<double>(erf_series(x * 0.70710678118654752440L)));
}

inline double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("oracle quantile: p out of range");
  double lo = -40.0, hi = 40.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (normal_cdf(mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// ---- Student t ----

inline double t_pdf(double x, unsigned nu) {
  double n = nu;
  double lc = std::lgamma(0.5 * (n + 1.0)) - std::lgamma(0.5 * n) -
              0.5 * std::log(n * 3.14159265358979323846);
  return std::exp(lc - 0.5 * (n + 1.0) * std::log1p(x * x / n));
}

inline double t_cdf(double t, unsigned nu) {
  if (t == 0.0) return 0.5;
  double a = std::fabs(t);
  double integral = integrate([nu](double x) { return t_pdf(x, nu); }, 0.0, a, 1e-15);
  return t > 0.0 ? 0.5 + integral : 0.5 - integral;
}

inline double t_quantile(double p, unsigned nu) {
  double lo = -1e8, hi = 1e8;
  for (int i = 0; i < 300; ++i) {
    double mid = 0.5 * (lo + hi);
    if (t_cdf(mid, nu) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// ---- Kolmogorov-Smirnov statistics ----

inline double ks_one_sample(std::vector<double> x, const std::function<double(double)>& cdf) {
  std::sort(x.begin(), x.end());
  double d = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double f = cdf(x[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

// ---- derivative-free Poisson-likelihood maximizer ----
// Coordinate hill climbing with step halving on the log-likelihood
// sum_k [ y_k * (x_k . c) - exp(x_k . c) ]. Independent of the IRLS path.

inline double poisson_loglik(const std::vector<std::vector<double>>& X,
                             const std::vector<double>& y, const std::vector<double>& c) {
  double ll = 0.0;
  for (std::size_t k = 0; k < X.size(); ++k) {
    double lin = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j) lin += X[k][j] * c[j];
    ll += y[k] * lin - std::exp(lin);
  }
  return ll;
}

inline std::vector<double> maximize_poisson_grid(const std::vector<std::vector<double>>& X,
                                                 const std::vector<double>& y,
                                                 std::vector<double> coef, double step0 = 0.5,
                                                 double step_min = 1e-11) {
  double cur = poisson_loglik(X, y, coef);
  double step = step0;
  while (step > step_min) {
    bool improved = false;
    for (std::size_t p = 0; p < coef.size(); ++p) {
      for (double dir : {+1.0, -1.0}) {
        std::vector<double> cand = coef;
        cand[p] += dir * step;
        double v = poisson_loglik(X, y, cand);
        while (v > cur) {
          coef = cand;
          cur = v;
          improved = true;
          cand[p] += dir * step;
          v = poisson_loglik(X, y, cand);
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return coef;
}

// ---- misc ----

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double sample_variance(const std::vector<double>& v) {
  double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace oracle

#endif
