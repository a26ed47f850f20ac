#include "svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "csv_io.hpp"

namespace eb {

namespace {

constexpr double kWidth = 560.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 60.0, kRight = 20.0, kTop = 36.0, kBottom = 48.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

// Round tick step to a 1/2/5 decade.
double tick_step(double span) {
  if (!(span > 0)) return 1.0;
  double raw = span / 6.0;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double r = raw / mag;
  double step = (r < 1.5) ? 1.0 : (r < 3.5) ? 2.0 : (r < 7.5) ? 5.0 : 10.0;
  return step * mag;
}

}  // namespace

SvgFigure::SvgFigure(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgFigure::set_ranges(double x_min, double x_max, double y_min, double y_max) {
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;
  x_min_ = x_min;
  x_max_ = x_max;
  y_min_ = y_min;
  y_max_ = y_max;
}

double SvgFigure::sx(double x) const {
  return kLeft + (x - x_min_) / (x_max_ - x_min_) * (kWidth - kLeft - kRight);
}

double SvgFigure::sy(double y) const {
  return kHeight - kBottom - (y - y_min_) / (y_max_ - y_min_) * (kHeight - kTop - kBottom);
}

void SvgFigure::add_bars(const std::vector<Bar>& bars, const std::string& fill, double opacity) {
  std::ostringstream os;
  for (const auto& b : bars) {
    double x0 = sx(b.x_left), x1 = sx(b.x_right);
    double y0 = sy(0.0 > y_min_ ? 0.0 : y_min_), y1 = sy(b.height);
    if (y1 > y0) std::swap(y0, y1);
    os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y1) << "\" width=\"" << num(x1 - x0)
       << "\" height=\"" << num(y0 - y1) << "\" fill=\"" << fill << "\" fill-opacity=\""
       << num(opacity) << "\"/>\n";
  }
  elements_.push_back(os.str());
}

void SvgFigure::add_polyline(const std::vector<std::pair<double, double>>& pts,
                             const std::string& stroke, double width) {
  if (pts.empty()) return;
  std::ostringstream os;
  os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << num(width)
     << "\" points=\"";
  for (const auto& [x, y] : pts) os << num(sx(x)) << ',' << num(sy(y)) << ' ';
  os << "\"/>\n";
  elements_.push_back(os.str());
}

void SvgFigure::add_hline(double y, const std::string& stroke) {
  std::ostringstream os;
  os << "<line x1=\"" << num(sx(x_min_)) << "\" y1=\"" << num(sy(y)) << "\" x2=\""
     << num(sx(x_max_)) << "\" y2=\"" << num(sy(y)) << "\" stroke=\"" << stroke
     << "\" stroke-dasharray=\"4,3\"/>\n";
  elements_.push_back(os.str());
}

void SvgFigure::write(const std::string& path) const {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\""
     << " font-size=\"14\">" << title_ << "</text>\n";

  for (const auto& e : elements_) os << e;

  // axes
  os << "<line x1=\"" << kLeft << "\" y1=\"" << kHeight - kBottom << "\" x2=\"" << kWidth - kRight
     << "\" y2=\"" << kHeight - kBottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
     << kHeight - kBottom << "\" stroke=\"black\"/>\n";

  double xs = tick_step(x_max_ - x_min_);
  for (double t = std::ceil(x_min_ / xs) * xs; t <= x_max_ + 1e-9 * xs; t += xs) {
    os << "<line x1=\"" << num(sx(t)) << "\" y1=\"" << kHeight - kBottom << "\" x2=\""
       << num(sx(t)) << "\" y2=\"" << kHeight - kBottom + 5 << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(sx(t)) << "\" y=\"" << kHeight - kBottom + 18
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(t)
       << "</text>\n";
  }
  double ys = tick_step(y_max_ - y_min_);
  for (double t = std::ceil(y_min_ / ys) * ys; t <= y_max_ + 1e-9 * ys; t += ys) {
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << num(sy(t)) << "\" x2=\"" << kLeft
       << "\" y2=\"" << num(sy(t)) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << num(sy(t) + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(t)
       << "</text>\n";
  }

  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label_
     << "</text>\n";
  os << "<text x=\"14\" y=\"" << kHeight / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 14 "
     << kHeight / 2 << ")\">" << y_label_ << "</text>\n";
  os << "</svg>\n";

  write_text_file(path, os.str());
}

}  // namespace eb
