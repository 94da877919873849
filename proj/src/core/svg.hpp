#pragma once

#include <string>
#include <vector>

namespace nclust {

// Minimal static line/bar plot writer, enough for the gamma-vs-k views.
class SvgPlot {
 public:
  SvgPlot(std::string title, std::string x_label, std::string y_label);

  void set_x_range(double lo, double hi);
  void set_y_range(double lo, double hi);

  void add_line(const std::vector<double>& xs, const std::vector<double>& ys,
                const std::string& color, double width, const std::string& label = "");
  // single segment, used for bold significant steps
  void add_segment(double x0, double y0, double x1, double y1, const std::string& color,
                   double width);
  void add_point(double x, double y, const std::string& color, double radius = 4.0);
  void add_band(double x0, double x1, double y0, double y1, const std::string& color);
  void add_bar(double x, double height, double bar_width, const std::string& color);

  void write(const std::string& path) const;

 private:
  struct Element {
    std::string svg;
  };
  double px(double x) const;
  double py(double y) const;
  void ensure_range();

  std::string title_, x_label_, y_label_;
  double x_lo_ = 0, x_hi_ = 1, y_lo_ = 0, y_hi_ = 1;
  bool has_x_ = false, has_y_ = false;
  double seen_x_lo_ = 0, seen_x_hi_ = 0, seen_y_lo_ = 0, seen_y_hi_ = 0;
  bool seen_any_ = false;
  std::vector<Element> elements_;
  std::vector<std::pair<std::string, std::string>> legend_;  // label, color
};

const char* method_color(size_t method_index);

}  // namespace nclust
