#ifndef EB_GIBBS_HPP
#define EB_GIBBS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace eb {

// One unit's dataset for the two-group linear model y_i = alpha + beta*d_i + u_i.
struct UnitData {
  std::int64_t unit_id = 0;
  std::vector<double> y;
  std::vector<std::uint8_t> d;  // 0/1 state variable
};

// Per-unit Gibbs output: the summaries consumed by the score transforms.
struct PosteriorSummary {
  std::int64_t unit_id = 0;
  double beta_median = 0.0;
  double beta_robust_sd = 0.0;  // (q84 - q16)/2 of the retained draws
  double p_positive = 0.0;      // frequency of beta > 0 among retained draws
  std::uint64_t n_draws = 0;
  double q05 = 0.0, q16 = 0.0, q50 = 0.0, q84 = 0.0, q95 = 0.0;
  std::uint64_t seed = 0;
};

struct GibbsResult {
  PosteriorSummary summary;
  std::vector<double> beta_draws;  // retained draws, in sample order
};

// Two-block Gibbs sampler under flat priors on (alpha, beta) and flat prior
// on log sigma:
//   (i)  sigma^2 | alpha, beta  ~  InvGamma(n/2, SSR/2)
//   (ii) (alpha, beta) | sigma^2 ~ N(least-squares solution, sigma^2 (X'X)^-1)
// Retains n_iter - burn_in draws of beta. Deterministic given the seed.
GibbsResult gibbs_fit_draws(const UnitData& data, std::uint64_t n_iter, std::uint64_t burn_in,
                            std::uint64_t seed);

PosteriorSummary gibbs_fit(const UnitData& data, std::uint64_t n_iter, std::uint64_t burn_in,
                           std::uint64_t seed);

struct BatchFailure {
  std::int64_t unit_id = 0;
  std::string message;
};

struct BatchResult {
  std::vector<PosteriorSummary> summaries;  // successful units, input order
  std::vector<BatchFailure> failures;       // input order
};

// Optional per-unit sink, e.g. for dumping raw draws. Called from worker
// threads, possibly concurrently for different units.
using UnitSink = std::function<void(const UnitData&, const GibbsResult&)>;

// Per-unit seeds are base_seed ^ unit_id, so the result is a pure function of
// the inputs regardless of how units are scheduled across threads. Unit
// failures are collected; the remaining units still complete.
BatchResult batch_fit(std::span<const UnitData> units, std::uint64_t n_iter,
                      std::uint64_t burn_in, std::uint64_t base_seed, unsigned threads = 1,
                      const UnitSink& sink = nullptr);

}  // namespace eb

#endif
