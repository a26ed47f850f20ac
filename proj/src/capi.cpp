#include "ebayes/ebayes.h"

#include <cstring>
#include <span>
#include <string>

#include "config.hpp"
#include "errors.hpp"
#include "gibbs.hpp"
#include "histogram.hpp"
#include "lindsey.hpp"
#include "pipeline.hpp"
#include "score_transform.hpp"
#include "special_functions.hpp"
#include "tweedie.hpp"

struct eb_histogram {
  eb::Histogram h;
};
struct eb_lindsey_fit {
  eb::LindseyFit f;
};
struct eb_config {
  eb::Config c;
};

namespace {

thread_local std::string g_last_error;

eb_status map_code(eb::errc c) {
  switch (c) {
    case eb::errc::domain: return EB_ERROR_DOMAIN;
    case eb::errc::missing_input: return EB_ERROR_MISSING_INPUT;
    case eb::errc::config: return EB_ERROR_CONFIG;
    case eb::errc::numeric: return EB_ERROR_NUMERIC;
    case eb::errc::io: return EB_ERROR_IO;
  }
  return EB_ERROR_NUMERIC;
}

template <typename F>
eb_status guarded(F&& fn) noexcept {
  try {
    return fn();
  } catch (const eb::Error& e) {
    g_last_error = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return EB_ERROR_NUMERIC;
  } catch (...) {
    g_last_error = "unknown error";
    return EB_ERROR_NUMERIC;
  }
}

eb_status null_arg(const char* what) {
  g_last_error = std::string("null pointer argument: ") + what;
  return EB_ERROR_NULL_POINTER;
}

}  // namespace

extern "C" {

const char* eb_version(void) { return "1.0.0"; }

const char* eb_status_name(eb_status status) {
  switch (status) {
    case EB_OK: return "ok";
    case EB_ERROR_DOMAIN: return "domain_error";
    case EB_ERROR_MISSING_INPUT: return "missing_input";
    case EB_ERROR_CONFIG: return "config_error";
    case EB_ERROR_NUMERIC: return "numeric_error";
    case EB_ERROR_IO: return "io_error";
    case EB_ERROR_NULL_POINTER: return "null_pointer";
  }
  return "unknown";
}

const char* eb_last_error(void) { return g_last_error.c_str(); }

eb_status eb_std_normal_cdf(double x, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = eb::std_normal_cdf(x);
    return EB_OK;
  });
}

eb_status eb_std_normal_quantile(double p, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = eb::std_normal_quantile(p);
    return EB_OK;
  });
}

eb_status eb_student_t_cdf(double t, unsigned nu, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = eb::student_t_cdf(t, nu);
    return EB_OK;
  });
}

eb_status eb_percentile(const double* samples, size_t n, double q, double* out) {
  if (!out) return null_arg("out");
  if (!samples && n > 0) return null_arg("samples");
  return guarded([&] {
    *out = eb::percentile(std::span<const double>(samples, n), q);
    return EB_OK;
  });
}

eb_status eb_t_to_z(double t, unsigned nu, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = eb::t_to_z(t, nu);
    return EB_OK;
  });
}

eb_status eb_prob_to_z(double p, uint64_t n_draws, double* z, int* clamped) {
  if (!z) return null_arg("z");
  return guarded([&] {
    eb::ProbToZ r = eb::prob_to_z(p, n_draws);
    *z = r.z;
    if (clamped) *clamped = r.clamped ? 1 : 0;
    return EB_OK;
  });
}

eb_status eb_robust_sd(const double* draws, size_t n, double* out) {
  if (!out) return null_arg("out");
  if (!draws && n > 0) return null_arg("draws");
  return guarded([&] {
    *out = eb::robust_sd(std::span<const double>(draws, n));
    return EB_OK;
  });
}

eb_status eb_posterior_score(double median, double robust_sd, double* out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = eb::posterior_score(median, robust_sd);
    return EB_OK;
  });
}

eb_status eb_histogram_create(const double* scores, size_t n, double bin_width,
                              eb_histogram** out) {
  if (!out) return null_arg("out");
  if (!scores && n > 0) return null_arg("scores");
  *out = nullptr;
  return guarded([&] {
    auto h = new eb_histogram{eb::bin_scores(std::span<const double>(scores, n), bin_width)};
    *out = h;
    return EB_OK;
  });
}

eb_status eb_histogram_create_range(const double* scores, size_t n, double bin_width, double lo,
                                    double hi, eb_histogram** out) {
  if (!out) return null_arg("out");
  if (!scores && n > 0) return null_arg("scores");
  *out = nullptr;
  return guarded([&] {
    auto h = new eb_histogram{
        eb::bin_scores(std::span<const double>(scores, n), bin_width, std::make_pair(lo, hi))};
    *out = h;
    return EB_OK;
  });
}

eb_status eb_histogram_bins(const eb_histogram* h, size_t* out) {
  if (!h) return null_arg("h");
  if (!out) return null_arg("out");
  *out = h->h.size();
  return EB_OK;
}

eb_status eb_histogram_origin(const eb_histogram* h, double* out) {
  if (!h) return null_arg("h");
  if (!out) return null_arg("out");
  *out = h->h.origin;
  return EB_OK;
}

eb_status eb_histogram_bin_width(const eb_histogram* h, double* out) {
  if (!h) return null_arg("h");
  if (!out) return null_arg("out");
  *out = h->h.bin_width;
  return EB_OK;
}

eb_status eb_histogram_total(const eb_histogram* h, uint64_t* out) {
  if (!h) return null_arg("h");
  if (!out) return null_arg("out");
  *out = h->h.total;
  return EB_OK;
}

eb_status eb_histogram_counts(const eb_histogram* h, uint64_t* counts, size_t len) {
  if (!h) return null_arg("h");
  if (!counts) return null_arg("counts");
  return guarded([&] {
    if (len < h->h.size()) eb::throw_domain("eb_histogram_counts: buffer too small");
    std::memcpy(counts, h->h.counts.data(), h->h.size() * sizeof(uint64_t));
    return EB_OK;
  });
}

void eb_histogram_free(eb_histogram* h) { delete h; }

eb_status eb_lindsey_fit_create(const eb_histogram* h, int degree, eb_lindsey_fit** out) {
  if (!h) return null_arg("h");
  if (!out) return null_arg("out");
  *out = nullptr;
  return guarded([&] {
    auto f = new eb_lindsey_fit{eb::fit_lindsey(h->h, degree)};
    *out = f;
    return EB_OK;
  });
}

eb_status eb_lindsey_fit_degree(const eb_lindsey_fit* f, int* out) {
  if (!f) return null_arg("f");
  if (!out) return null_arg("out");
  *out = f->f.degree;
  return EB_OK;
}

eb_status eb_lindsey_fit_coefficients(const eb_lindsey_fit* f, double* coefficients, size_t len) {
  if (!f) return null_arg("f");
  if (!coefficients) return null_arg("coefficients");
  return guarded([&] {
    if (len < f->f.coefficients.size())
      eb::throw_domain("eb_lindsey_fit_coefficients: buffer too small");
    std::memcpy(coefficients, f->f.coefficients.data(),
                f->f.coefficients.size() * sizeof(double));
    return EB_OK;
  });
}

eb_status eb_lindsey_fit_standardization(const eb_lindsey_fit* f, double* center, double* scale) {
  if (!f) return null_arg("f");
  if (center) *center = f->f.center;
  if (scale) *scale = f->f.scale;
  return EB_OK;
}

eb_status eb_lindsey_fit_info(const eb_lindsey_fit* f, int* converged, int* iterations,
                              double* deviance) {
  if (!f) return null_arg("f");
  if (converged) *converged = f->f.converged ? 1 : 0;
  if (iterations) *iterations = f->f.iterations;
  if (deviance) *deviance = f->f.deviance;
  return EB_OK;
}

eb_status eb_lindsey_log_density_deriv(const eb_lindsey_fit* f, double z, double* out) {
  if (!f) return null_arg("f");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = eb::log_density_deriv(f->f, z);
    return EB_OK;
  });
}

eb_status eb_lindsey_log_density_second_deriv(const eb_lindsey_fit* f, double z, double* out) {
  if (!f) return null_arg("f");
  if (!out) return null_arg("out");
  return guarded([&] {
    *out = eb::log_density_second_deriv(f->f, z);
    return EB_OK;
  });
}

void eb_lindsey_fit_free(eb_lindsey_fit* f) { delete f; }

eb_status eb_tweedie_correct(const eb_lindsey_fit* f, double z, double sigma, eb_correction* out) {
  if (!f) return null_arg("f");
  if (!out) return null_arg("out");
  return guarded([&] {
    eb::CorrectionResult r = eb::correct(z, sigma, f->f);
    *out = {r.raw_score, r.correction_term, r.corrected_mean, r.corrected_sd,
            r.variance_clamped ? 1 : 0};
    return EB_OK;
  });
}

eb_status eb_tweedie_correct_batch(const eb_lindsey_fit* f, const double* scores, size_t n,
                                   double sigma, eb_correction* out) {
  if (!f) return null_arg("f");
  if (!out && n > 0) return null_arg("out");
  if (!scores && n > 0) return null_arg("scores");
  return guarded([&] {
    auto results = eb::correct_batch(std::span<const double>(scores, n), sigma, f->f);
    for (size_t i = 0; i < results.size(); ++i) {
      const auto& r = results[i];
      out[i] = {r.raw_score, r.correction_term, r.corrected_mean, r.corrected_sd,
                r.variance_clamped ? 1 : 0};
    }
    return EB_OK;
  });
}

eb_status eb_gibbs_fit(const double* y, const int* d, size_t n, uint64_t n_iter, uint64_t burn_in,
                       uint64_t seed, eb_posterior_summary* out) {
  if (!out) return null_arg("out");
  if (!y) return null_arg("y");
  if (!d) return null_arg("d");
  return guarded([&] {
    eb::UnitData u;
    u.unit_id = 0;
    u.y.assign(y, y + n);
    u.d.resize(n);
    for (size_t i = 0; i < n; ++i) {
      if (d[i] != 0 && d[i] != 1) eb::throw_domain("eb_gibbs_fit: d values must be 0 or 1");
      u.d[i] = static_cast<std::uint8_t>(d[i]);
    }
    eb::PosteriorSummary s = eb::gibbs_fit(u, n_iter, burn_in, seed);
    *out = {s.beta_median, s.beta_robust_sd, s.p_positive, s.n_draws,
            s.q05,          s.q16,           s.q50,        s.q84,
            s.q95,          s.seed};
    return EB_OK;
  });
}

eb_status eb_config_create(eb_config** out) {
  if (!out) return null_arg("out");
  *out = new eb_config{};
  return EB_OK;
}

eb_status eb_config_load(const char* path, eb_config** out) {
  if (!out) return null_arg("out");
  if (!path) return null_arg("path");
  *out = nullptr;
  return guarded([&] {
    auto c = new eb_config{eb::load_config(path)};
    *out = c;
    return EB_OK;
  });
}

eb_status eb_config_set(eb_config* cfg, const char* key, const char* value) {
  if (!cfg) return null_arg("cfg");
  if (!key) return null_arg("key");
  if (!value) return null_arg("value");
  return guarded([&] {
    cfg->c.set(key, value);
    return EB_OK;
  });
}

eb_status eb_config_get(const eb_config* cfg, const char* key, char* buf, size_t buf_len) {
  if (!cfg) return null_arg("cfg");
  if (!key) return null_arg("key");
  if (!buf) return null_arg("buf");
  return guarded([&] {
    std::string v = cfg->c.get(key);
    if (v.size() + 1 > buf_len) eb::throw_domain("eb_config_get: buffer too small");
    std::memcpy(buf, v.c_str(), v.size() + 1);
    return EB_OK;
  });
}

void eb_config_free(eb_config* cfg) { delete cfg; }

size_t eb_config_key_count(void) { return eb::config_keys().size(); }

eb_status eb_config_key_info(size_t index, const char** name, const char** default_value,
                             const char** help) {
  const auto& keys = eb::config_keys();
  if (index >= keys.size()) {
    g_last_error = "eb_config_key_info: index out of range";
    return EB_ERROR_DOMAIN;
  }
  if (name) *name = keys[index].name;
  if (default_value) *default_value = keys[index].default_value;
  if (help) *help = keys[index].help;
  return EB_OK;
}

eb_status eb_stage_run(const eb_config* cfg, const char* stage) {
  if (!cfg) return null_arg("cfg");
  if (!stage) return null_arg("stage");
  return guarded([&] {
    eb::run_stage(cfg->c, eb::stage_from_string(stage));
    return EB_OK;
  });
}

eb_status eb_pipeline_run(const eb_config* cfg) {
  if (!cfg) return null_arg("cfg");
  return guarded([&] {
    eb::run_pipeline(cfg->c);
    return EB_OK;
  });
}

} /* extern "C" */
