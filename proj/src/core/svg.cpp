#include "core/svg.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace nclust {

namespace {
constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 64;
constexpr double kRight = 24;
constexpr double kTop = 40;
constexpr double kBottom = 52;

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}
}  // namespace

const char* method_color(size_t method_index) {
  static const char* colors[3] = {"#d95f02", "#1b9e77", "#7570b3"};
  return colors[method_index % 3];
}

SvgPlot::SvgPlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void SvgPlot::set_x_range(double lo, double hi) {
  x_lo_ = lo;
  x_hi_ = hi;
  has_x_ = true;
}

void SvgPlot::set_y_range(double lo, double hi) {
  y_lo_ = lo;
  y_hi_ = hi;
  has_y_ = true;
}

void SvgPlot::ensure_range() {
  if (!has_x_) {
    x_lo_ = seen_any_ ? seen_x_lo_ : 0;
    x_hi_ = seen_any_ ? seen_x_hi_ : 1;
    if (x_hi_ - x_lo_ < 1e-12) x_hi_ = x_lo_ + 1;
  }
  if (!has_y_) {
    y_lo_ = seen_any_ ? seen_y_lo_ : 0;
    y_hi_ = seen_any_ ? seen_y_hi_ : 1;
    if (y_hi_ - y_lo_ < 1e-12) y_hi_ = y_lo_ + 1;
  }
}

double SvgPlot::px(double x) const {
  return kLeft + (x - x_lo_) / (x_hi_ - x_lo_) * (kWidth - kLeft - kRight);
}

double SvgPlot::py(double y) const {
  return kHeight - kBottom - (y - y_lo_) / (y_hi_ - y_lo_) * (kHeight - kTop - kBottom);
}

void SvgPlot::add_line(const std::vector<double>& xs, const std::vector<double>& ys,
                       const std::string& color, double width, const std::string& label) {
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!seen_any_) {
      seen_x_lo_ = seen_x_hi_ = xs[i];
      seen_y_lo_ = seen_y_hi_ = ys[i];
      seen_any_ = true;
    }
    seen_x_lo_ = std::min(seen_x_lo_, xs[i]);
    seen_x_hi_ = std::max(seen_x_hi_, xs[i]);
    seen_y_lo_ = std::min(seen_y_lo_, ys[i]);
    seen_y_hi_ = std::max(seen_y_hi_, ys[i]);
  }
  std::ostringstream e;
  e << "POLY|" << color << "|" << width << "|";
  for (size_t i = 0; i < xs.size(); ++i) e << xs[i] << "," << ys[i] << " ";
  elements_.push_back({e.str()});
  if (!label.empty()) legend_.emplace_back(label, color);
}

void SvgPlot::add_segment(double x0, double y0, double x1, double y1, const std::string& color,
                          double width) {
  add_line({x0, x1}, {y0, y1}, color, width);
}

void SvgPlot::add_point(double x, double y, const std::string& color, double radius) {
  add_line({x}, {y}, "none", 0);  // range bookkeeping only
  std::ostringstream e;
  e << "PT|" << color << "|" << radius << "|" << x << "," << y;
  elements_.push_back({e.str()});
}

void SvgPlot::add_band(double x0, double x1, double y0, double y1, const std::string& color) {
  add_line({x0, x1}, {y0, y1}, "none", 0);
  std::ostringstream e;
  e << "BAND|" << color << "|0|" << x0 << "," << y0 << " " << x1 << "," << y1;
  elements_.push_back({e.str()});
}

void SvgPlot::add_bar(double x, double height, double bar_width, const std::string& color) {
  add_line({x - bar_width / 2, x + bar_width / 2}, {0.0, height}, "none", 0);
  std::ostringstream e;
  e << "BAR|" << color << "|" << bar_width << "|" << x << "," << height;
  elements_.push_back({e.str()});
}

void SvgPlot::write(const std::string& path) const {
  SvgPlot copy = *this;
  copy.ensure_range();

  std::ofstream out(path);
  if (!out) fail(ErrorCategory::io, "cannot write " + path);
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='" << kHeight
      << "' viewBox='0 0 " << kWidth << " " << kHeight << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << kWidth / 2 << "' y='22' text-anchor='middle' font-size='15' "
      << "font-family='sans-serif'>" << title_ << "</text>\n";

  // axes
  out << "<line x1='" << kLeft << "' y1='" << kHeight - kBottom << "' x2='" << kWidth - kRight
      << "' y2='" << kHeight - kBottom << "' stroke='black'/>\n";
  out << "<line x1='" << kLeft << "' y1='" << kTop << "' x2='" << kLeft << "' y2='"
      << kHeight - kBottom << "' stroke='black'/>\n";
  for (int t = 0; t <= 5; ++t) {
    double fx = copy.x_lo_ + (copy.x_hi_ - copy.x_lo_) * t / 5.0;
    double fy = copy.y_lo_ + (copy.y_hi_ - copy.y_lo_) * t / 5.0;
    out << "<line x1='" << copy.px(fx) << "' y1='" << kHeight - kBottom << "' x2='" << copy.px(fx)
        << "' y2='" << kHeight - kBottom + 5 << "' stroke='black'/>\n";
    out << "<text x='" << copy.px(fx) << "' y='" << kHeight - kBottom + 20
        << "' text-anchor='middle' font-size='11' font-family='sans-serif'>" << fmt(fx)
        << "</text>\n";
    out << "<line x1='" << kLeft - 5 << "' y1='" << copy.py(fy) << "' x2='" << kLeft << "' y2='"
        << copy.py(fy) << "' stroke='black'/>\n";
    out << "<text x='" << kLeft - 8 << "' y='" << copy.py(fy) + 4
        << "' text-anchor='end' font-size='11' font-family='sans-serif'>" << fmt(fy)
        << "</text>\n";
  }
  out << "<text x='" << (kLeft + kWidth - kRight) / 2 << "' y='" << kHeight - 14
      << "' text-anchor='middle' font-size='13' font-family='sans-serif'>" << x_label_
      << "</text>\n";
  out << "<text x='16' y='" << (kTop + kHeight - kBottom) / 2
      << "' text-anchor='middle' font-size='13' font-family='sans-serif' "
      << "transform='rotate(-90 16 " << (kTop + kHeight - kBottom) / 2 << ")'>" << y_label_
      << "</text>\n";

  for (const Element& el : copy.elements_) {
    std::istringstream in(el.svg);
    std::string kind, color, param, coords;
    std::getline(in, kind, '|');
    std::getline(in, color, '|');
    std::getline(in, param, '|');
    std::getline(in, coords);
    if (kind == "POLY") {
      if (color == "none") continue;
      out << "<polyline fill='none' stroke='" << color << "' stroke-width='" << param
          << "' points='";
      std::istringstream pts(coords);
      std::string pair;
      while (pts >> pair) {
        auto comma = pair.find(',');
        double x = std::stod(pair.substr(0, comma));
        double y = std::stod(pair.substr(comma + 1));
        out << copy.px(x) << "," << copy.py(y) << " ";
      }
      out << "'/>\n";
    } else if (kind == "PT") {
      auto comma = coords.find(',');
      double x = std::stod(coords.substr(0, comma));
      double y = std::stod(coords.substr(comma + 1));
      out << "<circle cx='" << copy.px(x) << "' cy='" << copy.py(y) << "' r='" << param
          << "' fill='" << color << "'/>\n";
    } else if (kind == "BAND") {
      std::istringstream pts(coords);
      std::string p0, p1;
      pts >> p0 >> p1;
      double x0 = std::stod(p0.substr(0, p0.find(',')));
      double y0 = std::stod(p0.substr(p0.find(',') + 1));
      double x1 = std::stod(p1.substr(0, p1.find(',')));
      double y1 = std::stod(p1.substr(p1.find(',') + 1));
      out << "<rect x='" << copy.px(x0) << "' y='" << copy.py(y1) << "' width='"
          << copy.px(x1) - copy.px(x0) << "' height='" << copy.py(y0) - copy.py(y1) << "' fill='"
          << color << "' fill-opacity='0.25'/>\n";
    } else if (kind == "BAR") {
      auto comma = coords.find(',');
      double x = std::stod(coords.substr(0, comma));
      double h = std::stod(coords.substr(comma + 1));
      double w = std::stod(param);
      double x0 = copy.px(x - w / 2);
      double x1 = copy.px(x + w / 2);
      out << "<rect x='" << x0 << "' y='" << copy.py(h) << "' width='" << x1 - x0 << "' height='"
          << copy.py(0.0) - copy.py(h) << "' fill='" << color << "'/>\n";
    }
  }

  double ly = kTop + 6;
  for (const auto& [label, color] : copy.legend_) {
    out << "<line x1='" << kWidth - kRight - 130 << "' y1='" << ly << "' x2='"
        << kWidth - kRight - 106 << "' y2='" << ly << "' stroke='" << color
        << "' stroke-width='3'/>\n";
    out << "<text x='" << kWidth - kRight - 100 << "' y='" << ly + 4
        << "' font-size='12' font-family='sans-serif'>" << label << "</text>\n";
    ly += 18;
  }
  out << "</svg>\n";
  if (!out) fail(ErrorCategory::io, "write failed for " + path);
}

}  // namespace nclust
