#include "gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "special_functions.hpp"

namespace eb {

namespace {

// Guards the inverse-gamma draw against exactly zero residuals (noiseless
// input); irrelevant for any realistic fit.
constexpr double kSsrFloor = 1e-12;

void validate(const UnitData& data) {
  if (data.y.size() != data.d.size())
    throw_domain("gibbs_fit: y and d lengths differ for unit " + std::to_string(data.unit_id));
  if (data.y.size() < 3)
    throw_domain("gibbs_fit: need at least 3 observations, unit " + std::to_string(data.unit_id));
  std::size_t ones = 0;
  for (auto v : data.d) {
    if (v > 1) throw_domain("gibbs_fit: d values must be 0 or 1");
    ones += v;
  }
  if (ones == 0 || ones == data.d.size())
    throw_domain("gibbs_fit: degenerate design, beta unidentified (all d equal) for unit " +
                 std::to_string(data.unit_id));
  for (double v : data.y)
    if (!std::isfinite(v))
      throw_domain("gibbs_fit: non-finite response in unit " + std::to_string(data.unit_id));
}

}  // namespace

GibbsResult gibbs_fit_draws(const UnitData& data, std::uint64_t n_iter, std::uint64_t burn_in,
                            std::uint64_t seed) {
  validate(data);
  if (n_iter <= burn_in) throw_domain("gibbs_fit: n_iter must exceed burn_in");

  const std::size_t n = data.y.size();
  // Group sufficient statistics (d is 0/1, so X'X has a closed form).
  double n1 = 0.0, s0 = 0.0, s1 = 0.0, ss0 = 0.0, ss1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (data.d[i]) {
      n1 += 1.0;
      s1 += data.y[i];
      ss1 += data.y[i] * data.y[i];
    } else {
      s0 += data.y[i];
      ss0 += data.y[i] * data.y[i];
    }
  }
  const double nn = static_cast<double>(n);
  const double n0 = nn - n1;

  const double alpha_hat = s0 / n0;
  const double beta_hat = s1 / n1 - alpha_hat;

  // (X'X)^-1 for X = [1, d]: [[1/n0, -1/n0], [-1/n0, n/(n1*n0)]].
  const double inv00 = 1.0 / n0;
  const double inv01 = -1.0 / n0;
  const double inv11 = nn / (n1 * n0);
  // Cholesky factor of (X'X)^-1.
  const double l00 = std::sqrt(inv00);
  const double l10 = inv01 / l00;
  const double l11 = std::sqrt(inv11 - l10 * l10);

  Rng rng(seed);
  const std::uint64_t n_keep = n_iter - burn_in;
  std::vector<double> draws;
  draws.reserve(n_keep);

  double alpha = alpha_hat;
  double beta = beta_hat;
  for (std::uint64_t it = 0; it < n_iter; ++it) {
    // SSR in O(1) from the group sums.
    double a1 = alpha + beta;
    double ssr = (ss0 - 2.0 * alpha * s0 + n0 * alpha * alpha) +
                 (ss1 - 2.0 * a1 * s1 + n1 * a1 * a1);
    if (ssr < kSsrFloor) ssr = kSsrFloor;

    double g = rng.gamma_half_integer(static_cast<unsigned>(n));
    double sigma2 = 0.5 * ssr / g;
    double s = std::sqrt(sigma2);

    double z1 = rng.normal();
    double z2 = rng.normal();
    alpha = alpha_hat + s * l00 * z1;
    beta = beta_hat + s * (l10 * z1 + l11 * z2);

    if (it >= burn_in) draws.push_back(beta);
  }

  GibbsResult res;
  res.beta_draws = draws;

  std::vector<double> sorted = draws;
  std::sort(sorted.begin(), sorted.end());
  PosteriorSummary& sm = res.summary;
  sm.unit_id = data.unit_id;
  sm.n_draws = n_keep;
  sm.seed = seed;
  sm.q05 = percentile_sorted(sorted, 0.05);
  sm.q16 = percentile_sorted(sorted, 0.16);
  sm.q50 = percentile_sorted(sorted, 0.50);
  sm.q84 = percentile_sorted(sorted, 0.84);
  sm.q95 = percentile_sorted(sorted, 0.95);
  sm.beta_median = sm.q50;
  sm.beta_robust_sd = 0.5 * (sm.q84 - sm.q16);
  std::uint64_t pos = 0;
  for (double b : draws)
    if (b > 0.0) ++pos;
  sm.p_positive = static_cast<double>(pos) / static_cast<double>(n_keep);
  return res;
}

PosteriorSummary gibbs_fit(const UnitData& data, std::uint64_t n_iter, std::uint64_t burn_in,
                           std::uint64_t seed) {
  return gibbs_fit_draws(data, n_iter, burn_in, seed).summary;
}

BatchResult batch_fit(std::span<const UnitData> units, std::uint64_t n_iter,
                      std::uint64_t burn_in, std::uint64_t base_seed, unsigned threads,
                      const UnitSink& sink) {
  {
    std::set<std::int64_t> ids;
    for (const auto& u : units)
      if (!ids.insert(u.unit_id).second)
        throw_domain("batch_fit: duplicate unit_id " + std::to_string(u.unit_id));
  }

  struct Slot {
    bool ok = false;
    PosteriorSummary summary;
    std::string error;
  };
  std::vector<Slot> slots(units.size());

  parallel_chunks(units.size(), resolve_threads(threads), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      const UnitData& u = units[i];
      std::uint64_t seed = base_seed ^ static_cast<std::uint64_t>(u.unit_id);
      try {
        GibbsResult r = gibbs_fit_draws(u, n_iter, burn_in, seed);
        if (sink) sink(u, r);
        slots[i].summary = r.summary;
        slots[i].ok = true;
      } catch (const std::exception& ex) {
        slots[i].error = ex.what();
      }
    }
  });

  BatchResult out;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (slots[i].ok)
      out.summaries.push_back(std::move(slots[i].summary));
    else
      out.failures.push_back({units[i].unit_id, std::move(slots[i].error)});
  }
  return out;
}

}  // namespace eb
