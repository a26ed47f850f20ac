#include "histogram.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace eb {

Histogram bin_scores(std::span<const double> scores, double bin_width,
                     std::optional<std::pair<double, double>> range) {
  if (scores.empty()) throw_domain("bin_scores: empty input");
  if (!(bin_width > 0.0) || !std::isfinite(bin_width))
    throw_domain("bin_scores: bin_width must be positive");
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!std::isfinite(scores[i]))
      throw_domain("bin_scores: non-finite score at index " + std::to_string(i));
  }

  Histogram h;
  h.bin_width = bin_width;

  std::size_t n_bins = 0;
  if (range) {
    if (!(range->first < range->second)) throw_domain("bin_scores: empty range");
    h.origin = range->first;
    n_bins = static_cast<std::size_t>(std::ceil((range->second - range->first) / bin_width));
    if (n_bins == 0) n_bins = 1;
  } else {
    auto [mn, mx] = std::minmax_element(scores.begin(), scores.end());
    h.origin = bin_width * std::floor(*mn / bin_width);
    n_bins = static_cast<std::size_t>(std::floor((*mx - h.origin) / bin_width)) + 1;
  }

  h.counts.assign(n_bins, 0);
  for (double x : scores) {
    double pos = std::floor((x - h.origin) / bin_width);
    if (pos < 0.0 || pos >= static_cast<double>(n_bins))
      throw_domain("bin_scores: score " + std::to_string(x) + " outside the explicit range");
    ++h.counts[static_cast<std::size_t>(pos)];
  }
  h.total = scores.size();
  return h;
}

}  // namespace eb
