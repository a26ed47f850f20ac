#ifndef EB_SVG_HPP
#define EB_SVG_HPP

#include <string>
#include <utility>
#include <vector>

namespace eb {

// Minimal static SVG plotting: enough for histograms with curve overlays.
// All output is deterministic; figures carry their data ranges on the axes.
class SvgFigure {
 public:
  SvgFigure(std::string title, std::string x_label, std::string y_label);

  // World-coordinate ranges; call before adding elements.
  void set_ranges(double x_min, double x_max, double y_min, double y_max);

  struct Bar {
    double x_left, x_right, height;
  };
  void add_bars(const std::vector<Bar>& bars, const std::string& fill, double opacity = 1.0);
  void add_polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                    double width = 1.5);
  void add_hline(double y, const std::string& stroke);

  // Renders and writes the file (atomically via the CSV writer helper).
  void write(const std::string& path) const;

 private:
  double sx(double x) const;
  double sy(double y) const;

  std::string title_, x_label_, y_label_;
  double x_min_ = 0, x_max_ = 1, y_min_ = 0, y_max_ = 1;
  std::vector<std::string> elements_;
};

}  // namespace eb

#endif
