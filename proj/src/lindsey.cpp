#include "lindsey.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"
#include "linalg.hpp"

namespace eb {

namespace {

// Linear predictors are clamped to keep exp() away from overflow during
// transient IRLS overshoot; converged fits sit far inside this window.
constexpr double kEtaClamp = 30.0;

double poly_eval(const std::vector<double>& c, double u) {
  double v = 0.0;
  for (std::size_t j = c.size(); j-- > 0;) v = v * u + c[j];
  return v;
}

}  // namespace

double LindseyFit::log_mean(double z) const {
  double u = (z - center) / scale;
  return poly_eval(coefficients, u);
}

double LindseyFit::fitted_mean(double z) const { return std::exp(log_mean(z)); }

LindseyFit fit_lindsey(const Histogram& hist, int degree) {
  if (degree < 1) throw_domain("fit_lindsey: degree must be >= 1");
  const std::size_t n_bins = hist.size();
  const std::size_t p = static_cast<std::size_t>(degree) + 1;
  if (n_bins <= p) throw_domain("fit_lindsey: need more bins than degree + 1");
  if (hist.total == 0) throw_domain("fit_lindsey: empty histogram");

  // Count-weighted standardization of the midpoints.
  double total = static_cast<double>(hist.total);
  double mean = 0.0;
  for (std::size_t k = 0; k < n_bins; ++k)
    mean += static_cast<double>(hist.counts[k]) * hist.midpoint(k);
  mean /= total;
  double var = 0.0;
  for (std::size_t k = 0; k < n_bins; ++k) {
    double d = hist.midpoint(k) - mean;
    var += static_cast<double>(hist.counts[k]) * d * d;
  }
  var /= total;
  if (!(var > 0.0))
    throw_numeric("fit_lindsey: histogram mass concentrated in one bin, zero spread");

  LindseyFit fit;
  fit.degree = degree;
  fit.center = mean;
  fit.scale = std::sqrt(var);

  // Basis rows: powers of the standardized midpoint.
  std::vector<double> X(n_bins * p);
  for (std::size_t k = 0; k < n_bins; ++k) {
    double u = (hist.midpoint(k) - fit.center) / fit.scale;
    double pw = 1.0;
    for (std::size_t j = 0; j < p; ++j) {
      X[k * p + j] = pw;
      pw *= u;
    }
  }

  std::vector<double> eta(p, 0.0);
  eta[0] = std::log(total / static_cast<double>(n_bins) + 0.1);

  const int max_iter = 50;
  const double tol = 1e-8;
  std::vector<double> mu(n_bins), lin(n_bins);

  for (int iter = 1; iter <= max_iter; ++iter) {
    // linear predictor and mean
    for (std::size_t k = 0; k < n_bins; ++k) {
      double l = 0.0;
      for (std::size_t j = 0; j < p; ++j) l += eta[j] * X[k * p + j];
      if (l > kEtaClamp) l = kEtaClamp;
      if (l < -kEtaClamp) l = -kEtaClamp;
      lin[k] = l;
      mu[k] = std::exp(l);
    }

    // Weighted normal equations for the working response z = lin + (y-mu)/mu
    // with weights mu:  (X^T W X) eta_new = X^T W z.
    std::vector<double> xtwx(p * p, 0.0), xtwz(p, 0.0);
    for (std::size_t k = 0; k < n_bins; ++k) {
      double w = mu[k];
      double y = static_cast<double>(hist.counts[k]);
      double z = lin[k] + (y - mu[k]) / mu[k];
      const double* row = &X[k * p];
      for (std::size_t i = 0; i < p; ++i) {
        double wxi = w * row[i];
        xtwz[i] += wxi * z;
        for (std::size_t j = i; j < p; ++j) xtwx[i * p + j] += wxi * row[j];
      }
    }
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < i; ++j) xtwx[i * p + j] = xtwx[j * p + i];

    std::vector<double> eta_new;
    try {
      eta_new = solve_spd(p, std::move(xtwx), std::move(xtwz));
    } catch (const Error&) {
      throw_numeric("fit_lindsey: singular weighted normal equations at iteration " +
                    std::to_string(iter));
    }

    double delta = 0.0;
    for (std::size_t j = 0; j < p; ++j) delta = std::max(delta, std::fabs(eta_new[j] - eta[j]));
    eta = std::move(eta_new);
    fit.iterations = iter;
    if (delta < tol) {
      fit.converged = true;
      break;
    }
  }

  fit.coefficients = eta;

  // Poisson deviance 2*sum[y log(y/mu) - (y - mu)], with the y=0 term = 2*mu.
  double dev = 0.0;
  for (std::size_t k = 0; k < n_bins; ++k) {
    double m = fit.fitted_mean(hist.midpoint(k));
    double y = static_cast<double>(hist.counts[k]);
    dev += (y > 0.0) ? y * std::log(y / m) - (y - m) : m;
  }
  fit.deviance = 2.0 * dev;
  return fit;
}

double log_density_deriv(const LindseyFit& fit, double z) {
  double u = (z - fit.center) / fit.scale;
  double s = 0.0;
  for (std::size_t j = fit.coefficients.size(); j-- > 1;)
    s = s * u + static_cast<double>(j) * fit.coefficients[j];
  return s / fit.scale;
}

double log_density_second_deriv(const LindseyFit& fit, double z) {
  double u = (z - fit.center) / fit.scale;
  double s = 0.0;
  for (std::size_t j = fit.coefficients.size(); j-- > 2;)
    s = s * u + static_cast<double>(j) * static_cast<double>(j - 1) * fit.coefficients[j];
  return s / (fit.scale * fit.scale);
}

}  // namespace eb
