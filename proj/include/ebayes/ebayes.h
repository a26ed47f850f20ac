/* ebayes: local empirical Bayes correction for large-scale simultaneous
 * estimation. C API over the C++ core; every function returns an eb_status,
 * results come back through out-parameters, and rich objects live behind
 * opaque handles with explicit free functions.
 *
 * On any failure eb_last_error() returns a thread-local description of what
 * went wrong.
 */
#ifndef EBAYES_H
#define EBAYES_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef EBAYES_BUILD
#    define EBAYES_API __declspec(dllexport)
#  else
#    define EBAYES_API __declspec(dllimport)
#  endif
#else
#  define EBAYES_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum eb_status {
  EB_OK = 0,
  EB_ERROR_DOMAIN = 1,        /* bad argument / precondition violation */
  EB_ERROR_MISSING_INPUT = 2, /* required input artifact not found */
  EB_ERROR_CONFIG = 3,        /* config file or key/value problem */
  EB_ERROR_NUMERIC = 4,       /* numerical procedure failed */
  EB_ERROR_IO = 5,            /* filesystem or serialization failure */
  EB_ERROR_NULL_POINTER = 6   /* a required pointer argument was NULL */
} eb_status;

EBAYES_API const char* eb_version(void);
EBAYES_API const char* eb_status_name(eb_status status);
/* Thread-local message for the most recent failure on this thread. */
EBAYES_API const char* eb_last_error(void);

/* ---- scalar special functions and score transforms ---- */

EBAYES_API eb_status eb_std_normal_cdf(double x, double* out);
EBAYES_API eb_status eb_std_normal_quantile(double p, double* out);
EBAYES_API eb_status eb_student_t_cdf(double t, unsigned nu, double* out);
EBAYES_API eb_status eb_percentile(const double* samples, size_t n, double q, double* out);

EBAYES_API eb_status eb_t_to_z(double t, unsigned nu, double* out);
/* p is clamped into [1/(2*n_draws), 1-1/(2*n_draws)]; *clamped (optional)
 * reports whether the clamp changed p. */
EBAYES_API eb_status eb_prob_to_z(double p, uint64_t n_draws, double* z, int* clamped);
EBAYES_API eb_status eb_robust_sd(const double* draws, size_t n, double* out);
EBAYES_API eb_status eb_posterior_score(double median, double robust_sd, double* out);

/* ---- histogram handle ---- */

typedef struct eb_histogram eb_histogram;

/* Data-driven range: origin snaps to bin_width * floor(min/bin_width). */
EBAYES_API eb_status eb_histogram_create(const double* scores, size_t n, double bin_width,
                                         eb_histogram** out);
/* Explicit range [lo, hi); scores outside it are a domain error. */
EBAYES_API eb_status eb_histogram_create_range(const double* scores, size_t n, double bin_width,
                                               double lo, double hi, eb_histogram** out);
EBAYES_API eb_status eb_histogram_bins(const eb_histogram* h, size_t* out);
EBAYES_API eb_status eb_histogram_origin(const eb_histogram* h, double* out);
EBAYES_API eb_status eb_histogram_bin_width(const eb_histogram* h, double* out);
EBAYES_API eb_status eb_histogram_total(const eb_histogram* h, uint64_t* out);
/* counts must hold eb_histogram_bins() entries. */
EBAYES_API eb_status eb_histogram_counts(const eb_histogram* h, uint64_t* counts, size_t len);
EBAYES_API void eb_histogram_free(eb_histogram* h);

/* ---- Lindsey density fit handle ---- */

typedef struct eb_lindsey_fit eb_lindsey_fit;

EBAYES_API eb_status eb_lindsey_fit_create(const eb_histogram* h, int degree,
                                           eb_lindsey_fit** out);
EBAYES_API eb_status eb_lindsey_fit_degree(const eb_lindsey_fit* f, int* out);
/* coefficients must hold degree+1 entries; they live on the standardized
 * abscissa (z - center)/scale. */
EBAYES_API eb_status eb_lindsey_fit_coefficients(const eb_lindsey_fit* f, double* coefficients,
                                                 size_t len);
EBAYES_API eb_status eb_lindsey_fit_standardization(const eb_lindsey_fit* f, double* center,
                                                    double* scale);
EBAYES_API eb_status eb_lindsey_fit_info(const eb_lindsey_fit* f, int* converged, int* iterations,
                                         double* deviance);
/* First and second derivatives of the fitted log-density at z. */
EBAYES_API eb_status eb_lindsey_log_density_deriv(const eb_lindsey_fit* f, double z, double* out);
EBAYES_API eb_status eb_lindsey_log_density_second_deriv(const eb_lindsey_fit* f, double z,
                                                         double* out);
EBAYES_API void eb_lindsey_fit_free(eb_lindsey_fit* f);

/* ---- Tweedie correction ---- */

typedef struct eb_correction {
  double raw_score;
  double correction_term; /* sigma^2 * l'(z) */
  double corrected_mean;  /* raw_score + correction_term */
  double corrected_sd;    /* sqrt(max(0, sigma^2 (1 + sigma^2 l''(z)))) */
  int variance_clamped;
} eb_correction;

EBAYES_API eb_status eb_tweedie_correct(const eb_lindsey_fit* f, double z, double sigma,
                                        eb_correction* out);
/* out must hold n entries; order follows the input. */
EBAYES_API eb_status eb_tweedie_correct_batch(const eb_lindsey_fit* f, const double* scores,
                                              size_t n, double sigma, eb_correction* out);

/* ---- per-unit Gibbs sampler ---- */

typedef struct eb_posterior_summary {
  double beta_median;
  double beta_robust_sd; /* (q84 - q16)/2 of the retained draws */
  double p_positive;     /* frequency of beta > 0 */
  uint64_t n_draws;
  double q05, q16, q50, q84, q95;
  uint64_t seed;
} eb_posterior_summary;

/* Two-block Gibbs sampler for y_i = alpha + beta*d_i + noise under flat
 * priors on (alpha, beta) and flat prior on log sigma. d holds 0/1 and must
 * contain both values; n >= 3; deterministic given seed. */
EBAYES_API eb_status eb_gibbs_fit(const double* y, const int* d, size_t n, uint64_t n_iter,
                                  uint64_t burn_in, uint64_t seed, eb_posterior_summary* out);

/* ---- pipeline configuration and stages ---- */

typedef struct eb_config eb_config;

EBAYES_API eb_status eb_config_create(eb_config** out); /* all defaults */
EBAYES_API eb_status eb_config_load(const char* path, eb_config** out);
EBAYES_API eb_status eb_config_set(eb_config* cfg, const char* key, const char* value);
/* Writes the current value into buf (NUL terminated); fails with
 * EB_ERROR_DOMAIN if buf_len is too small. */
EBAYES_API eb_status eb_config_get(const eb_config* cfg, const char* key, char* buf,
                                   size_t buf_len);
EBAYES_API void eb_config_free(eb_config* cfg);

/* Key registry for help text: count, then per-index name/default/help. */
EBAYES_API size_t eb_config_key_count(void);
EBAYES_API eb_status eb_config_key_info(size_t index, const char** name,
                                        const char** default_value, const char** help);

/* stage is one of: simulate, fit, score, density, correct, report. */
EBAYES_API eb_status eb_stage_run(const eb_config* cfg, const char* stage);
/* All stages in order. */
EBAYES_API eb_status eb_pipeline_run(const eb_config* cfg);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EBAYES_H */
