#pragma once

// Dataset CSV files: header row with feature columns (`x`, or `x1..xn`), the
// label column `y`, and an optional prediction column `yhat` that loaders
// ignore. Numbers are written in shortest round-trip decimal form.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "erm/dataset.hpp"

namespace erm {

inline std::string format_double(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error(ErrorCode::InvalidArgument, "cannot format number");
  return std::string(buf, end);
}

inline std::string format_list(std::span<const double> values, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += format_double(values[i]);
  }
  return out;
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      cells.push_back(line.substr(start));
      return cells;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

/// Parses the whole cell as a double. Returns false on syntax errors; the
/// value may still be non-finite ("nan", "inf") on success.
inline bool parse_double(std::string_view cell, double& out) {
  cell = trim(cell);
  if (cell.empty()) return false;
  if (cell.front() == '+') cell.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

inline std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::MissingFile, "cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

inline void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
  out << contents;
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "write to " + path.string() + " failed");
}

struct CsvLayout {
  std::vector<std::size_t> feature_columns;
  std::size_t label_column = 0;
  std::size_t prediction_column = static_cast<std::size_t>(-1);
  std::size_t width = 0;
};

inline CsvLayout parse_header(std::string_view header) {
  CsvLayout layout;
  const auto names = split(header, ',');
  layout.width = names.size();
  bool have_label = false;
  for (std::size_t c = 0; c < names.size(); ++c) {
    const auto name = trim(names[c]);
    if (name == "y") {
      if (have_label) throw Error(ErrorCode::MalformedRow, "duplicate label column", 1, c + 1);
      have_label = true;
      layout.label_column = c;
    } else if (name == "yhat") {
      layout.prediction_column = c;
    } else {
      layout.feature_columns.push_back(c);
    }
  }
  if (!have_label) throw Error(ErrorCode::MalformedRow, "header has no label column `y`", 1);
  if (layout.feature_columns.empty()) throw Error(ErrorCode::MalformedRow, "header has no feature columns", 1);
  return layout;
}

inline double parse_cell(std::string_view cell, std::size_t line, std::size_t column) {
  double v = 0.0;
  if (!parse_double(cell, v)) {
    throw Error(ErrorCode::MalformedRow, "cannot parse `" + std::string(cell) + "` as a number", line, column);
  }
  if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteValue, "non-finite value", line, column);
  return v;
}

inline std::string feature_header(std::size_t n) {
  if (n == 1) return "x";
  std::string out;
  for (std::size_t r = 1; r <= n; ++r) {
    if (r > 1) out += ',';
    out += "x" + std::to_string(r);
  }
  return out;
}

}  // namespace detail

inline Dataset load_csv(const std::filesystem::path& path, LabelSpace label_space) {
  const auto lines = detail::read_lines(path);
  if (lines.empty()) throw Error(ErrorCode::MalformedRow, "file has no header", 1);
  const auto layout = detail::parse_header(lines.front());

  std::vector<LabeledPoint> points;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (detail::trim(lines[i]).empty()) continue;
    const auto cells = detail::split(lines[i], ',');
    if (cells.size() != layout.width) {
      throw Error(ErrorCode::MalformedRow,
                  "expected " + std::to_string(layout.width) + " cells, got " + std::to_string(cells.size()),
                  line_no);
    }
    LabeledPoint p;
    p.features.reserve(layout.feature_columns.size());
    for (std::size_t c : layout.feature_columns) p.features.push_back(detail::parse_cell(cells[c], line_no, c + 1));
    p.label = detail::parse_cell(cells[layout.label_column], line_no, layout.label_column + 1);
    if (layout.prediction_column < cells.size()) {
      detail::parse_cell(cells[layout.prediction_column], line_no, layout.prediction_column + 1);
    }
    if (!label_conforms(label_space, p.label)) {
      throw Error(ErrorCode::LabelOutsideSpace, "label " + format_double(p.label) + " is not in {-1,+1}", line_no);
    }
    points.push_back(std::move(p));
  }
  if (points.empty()) throw Error(ErrorCode::ZeroPoints, path.string() + " has no data rows");
  return Dataset(std::move(points), label_space);
}

/// Writes the dataset with header `x,y` (1-D) or `x1,..,xn,y`.
inline void save_csv(const std::filesystem::path& path, const Dataset& data) {
  std::ostringstream out;
  out << detail::feature_header(data.feature_dim()) << ",y\n";
  for (const auto& p : data) out << format_list(p.features) << ',' << format_double(p.label) << '\n';
  detail::write_file(path, out.str());
}

/// Writes the three-column `x,y,yhat` file consumed by plotting.
inline void save_plot_csv(const std::filesystem::path& path, const Dataset& data, std::span<const double> predictions) {
  if (data.feature_dim() != 1) throw Error(ErrorCode::DimensionMismatch, "plot files need a 1-D dataset");
  if (predictions.size() != data.size()) {
    throw Error(ErrorCode::DimensionMismatch, std::to_string(predictions.size()) + " predictions for " +
                                                  std::to_string(data.size()) + " points");
  }
  std::ostringstream out;
  out << "x,y,yhat\n";
  for (std::size_t i = 0; i < data.size(); ++i) {
    out << format_double(data[i].features[0]) << ',' << format_double(data[i].label) << ','
        << format_double(predictions[i]) << '\n';
  }
  detail::write_file(path, out.str());
}

struct PlotRow {
  double x = 0.0;
  double y = 0.0;
  double yhat = 0.0;
};

/// Reads a file with columns exactly `x,y,yhat`.
inline std::vector<PlotRow> load_plot_csv(const std::filesystem::path& path) {
  const auto lines = detail::read_lines(path);
  if (lines.empty() || detail::trim(lines.front()) != "x,y,yhat") {
    throw Error(ErrorCode::MalformedCsv, path.string() + " does not have header x,y,yhat", 1);
  }
  std::vector<PlotRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (detail::trim(lines[i]).empty()) continue;
    const auto cells = detail::split(lines[i], ',');
    if (cells.size() != 3) throw Error(ErrorCode::MalformedCsv, "expected 3 cells", i + 1);
    double v[3];
    for (std::size_t c = 0; c < 3; ++c) {
      if (!detail::parse_double(cells[c], v[c]) || !std::isfinite(v[c])) {
        throw Error(ErrorCode::MalformedCsv, "bad number `" + std::string(cells[c]) + "`", i + 1, c + 1);
      }
    }
    rows.push_back({v[0], v[1], v[2]});
  }
  return rows;
}

}  // namespace erm
