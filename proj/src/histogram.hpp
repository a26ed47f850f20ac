#ifndef EB_HISTOGRAM_HPP
#define EB_HISTOGRAM_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace eb {

// Fixed-width binned score counts, the input to Lindsey's method.
// Bin k covers [origin + k*bin_width, origin + (k+1)*bin_width).
struct Histogram {
  double bin_width = 0.0;
  double origin = 0.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  std::size_t size() const { return counts.size(); }
  double left_edge(std::size_t k) const { return origin + static_cast<double>(k) * bin_width; }
  double midpoint(std::size_t k) const { return origin + (static_cast<double>(k) + 0.5) * bin_width; }
};

// Bin scores with the given width. Without an explicit range the origin snaps
// to bin_width * floor(min/bin_width) and the last bin contains the maximum.
// An explicit range that excludes any score is a domain error, as are empty
// or non-finite inputs.
Histogram bin_scores(std::span<const double> scores, double bin_width,
                     std::optional<std::pair<double, double>> range = std::nullopt);

}  // namespace eb

#endif
