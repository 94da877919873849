#include "core/io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "core/error.hpp"

namespace nclust {

namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, delimiter)) fields.push_back(field);
  if (!line.empty() && line.back() == delimiter) fields.emplace_back();
  return fields;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

char detect_delimiter(const std::string& header) {
  if (header.find('\t') != std::string::npos) return '\t';
  if (header.find(',') != std::string::npos) return ',';
  return '\t';
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

MarkerMatrix load_markers(const std::string& path, const TextFormat& fmt) {
  std::ifstream in(path);
  if (!in) fail(ErrorCategory::io, "cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) fail(ErrorCategory::parse, path + ": empty file");
  line = strip_cr(line);
  const char delim = fmt.delimiter ? fmt.delimiter : detect_delimiter(line);

  std::vector<std::string> header = split_line(line, delim);
  if (header.size() < 2)
    fail(ErrorCategory::parse, path + ": header needs an id column and at least one marker");
  const size_t p = header.size() - 1;

  MarkerMatrix m;
  m.marker_names.assign(header.begin() + 1, header.end());

  std::vector<std::vector<double>> rows;
  bool any_fraction = false;
  bool any_missing = false;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    std::vector<std::string> fields = split_line(line, delim);
    if (fields.size() != p + 1)
      fail(ErrorCategory::parse, path + ": line " + std::to_string(line_no) + " has " +
                                     std::to_string(fields.size() - 1) + " cells, expected " +
                                     std::to_string(p));
    m.row_ids.push_back(fields[0]);
    std::vector<double> row(p);
    for (size_t j = 0; j < p; ++j) {
      const std::string& cell = fields[j + 1];
      if (cell == fmt.missing_token) {
        row[j] = std::numeric_limits<double>::quiet_NaN();
        any_missing = true;
        continue;
      }
      if (cell == "0") {
        row[j] = 0.0;
        continue;
      }
      if (cell == "1") {
        row[j] = 1.0;
        continue;
      }
      size_t used = 0;
      double v;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != cell.size() || !(v >= 0.0 && v <= 1.0))
        fail(ErrorCategory::parse, path + ": bad cell '" + cell + "' at line " +
                                       std::to_string(line_no) + ", marker " +
                                       m.marker_names[j]);
      row[j] = v;
      if (v != 0.0 && v != 1.0) any_fraction = true;
    }
    rows.push_back(std::move(row));
  }
  if (any_fraction && any_missing)
    fail(ErrorCategory::parse, path + ": file mixes fractional cells with missing cells");

  m.cells.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(p));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < p; ++j)
      m.cells(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  m.imputed = any_fraction;
  m.validate();
  return m;
}

void save_markers(const MarkerMatrix& m, const std::string& path, const TextFormat& fmt) {
  std::ofstream out(path);
  if (!out) fail(ErrorCategory::io, "cannot write " + path);
  const char delim = fmt.delimiter ? fmt.delimiter : '\t';
  out << "id";
  for (size_t j = 0; j < m.n_cols(); ++j)
    out << delim << (j < m.marker_names.size() ? m.marker_names[j] : "m" + std::to_string(j + 1));
  out << '\n';
  for (size_t i = 0; i < m.n_rows(); ++i) {
    out << (i < m.row_ids.size() ? m.row_ids[i] : "r" + std::to_string(i + 1));
    for (size_t j = 0; j < m.n_cols(); ++j) {
      out << delim;
      double v = m.cells(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (std::isnan(v))
        out << fmt.missing_token;
      else
        out << format_double(v);
    }
    out << '\n';
  }
  if (!out) fail(ErrorCategory::io, "write failed for " + path);
}

void save_distances(const CondensedDistances& d, const std::string& path, char delimiter) {
  std::ofstream out(path);
  if (!out) fail(ErrorCategory::io, "cannot write " + path);
  out << "i" << delimiter << "j" << delimiter << "distance\n";
  for (size_t i = 0; i < d.n; ++i)
    for (size_t j = i + 1; j < d.n; ++j)
      out << (i + 1) << delimiter << (j + 1) << delimiter << format_double(d.at(i, j)) << '\n';
  if (!out) fail(ErrorCategory::io, "write failed for " + path);
}

void save_labels(const ClusterAssignment& a, const std::vector<std::string>& row_ids,
                 const std::string& path, char delimiter) {
  std::ofstream out(path);
  if (!out) fail(ErrorCategory::io, "cannot write " + path);
  out << "id" << delimiter << "cluster\n";
  for (size_t i = 0; i < a.labels.size(); ++i) {
    out << (i < row_ids.size() ? row_ids[i] : "r" + std::to_string(i + 1)) << delimiter
        << a.labels[i] << '\n';
  }
  if (!out) fail(ErrorCategory::io, "write failed for " + path);
}

std::vector<int> load_labels(const std::string& path, char delimiter) {
  std::ifstream in(path);
  if (!in) fail(ErrorCategory::io, "cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) fail(ErrorCategory::parse, path + ": empty file");
  line = strip_cr(line);
  const char delim = delimiter ? delimiter : detect_delimiter(line);
  std::vector<int> labels;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    std::vector<std::string> fields = split_line(line, delim);
    if (fields.size() < 2)
      fail(ErrorCategory::parse, path + ": line " + std::to_string(line_no) + " needs id and label");
    try {
      labels.push_back(std::stoi(fields[1]));
    } catch (const std::exception&) {
      fail(ErrorCategory::parse,
           path + ": bad label '" + fields[1] + "' at line " + std::to_string(line_no));
    }
  }
  return labels;
}

}  // namespace nclust
