#pragma once

// Standalone SVG scatter plot: data points as hollow circles, predictions as
// one polyline ordered by x.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "erm/csv.hpp"

namespace erm {

namespace detail {

inline std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s(buf);
  return s == "-0.00" ? "0.00" : s;
}

inline std::string tick_label(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Range {
  double lo;
  double hi;
};

inline Range padded_range(double lo, double hi) {
  if (!(hi > lo)) return {lo - 1.0, hi + 1.0};
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

}  // namespace detail

inline std::string render_svg(std::span<const PlotRow> rows) {
  if (rows.empty()) throw Error(ErrorCode::MalformedCsv, "plot has no rows");
  constexpr double kWidth = 640.0, kHeight = 480.0, kMargin = 50.0;

  double xlo = rows[0].x, xhi = rows[0].x, ylo = rows[0].y, yhi = rows[0].y;
  for (const auto& r : rows) {
    xlo = std::min(xlo, r.x);
    xhi = std::max(xhi, r.x);
    ylo = std::min({ylo, r.y, r.yhat});
    yhi = std::max({yhi, r.y, r.yhat});
  }
  const auto xr = detail::padded_range(xlo, xhi);
  const auto yr = detail::padded_range(ylo, yhi);
  auto px = [&](double x) { return kMargin + (x - xr.lo) / (xr.hi - xr.lo) * (kWidth - 2 * kMargin); };
  auto py = [&](double y) { return kHeight - kMargin - (y - yr.lo) / (yr.hi - yr.lo) * (kHeight - 2 * kMargin); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" viewBox=\"0 0 640 480\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";

  const auto left = detail::fixed2(kMargin), right = detail::fixed2(kWidth - kMargin);
  const auto top = detail::fixed2(kMargin), bottom = detail::fixed2(kHeight - kMargin);
  out += "<g stroke=\"black\" stroke-width=\"1\">\n";
  out += "<line x1=\"" + left + "\" y1=\"" + bottom + "\" x2=\"" + right + "\" y2=\"" + bottom + "\"/>\n";
  out += "<line x1=\"" + left + "\" y1=\"" + bottom + "\" x2=\"" + left + "\" y2=\"" + top + "\"/>\n";
  out += "</g>\n";
  out += "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<text x=\"" + right + "\" y=\"" + detail::fixed2(kHeight - kMargin + 30) +
         "\" text-anchor=\"end\">x</text>\n";
  out += "<text x=\"" + detail::fixed2(kMargin - 30) + "\" y=\"" + top + "\">y</text>\n";
  out += "<text x=\"" + left + "\" y=\"" + detail::fixed2(kHeight - kMargin + 15) + "\">" +
         detail::tick_label(xr.lo) + "</text>\n";
  out += "<text x=\"" + right + "\" y=\"" + detail::fixed2(kHeight - kMargin + 15) + "\" text-anchor=\"end\">" +
         detail::tick_label(xr.hi) + "</text>\n";
  out += "<text x=\"" + detail::fixed2(kMargin - 5) + "\" y=\"" + bottom + "\" text-anchor=\"end\">" +
         detail::tick_label(yr.lo) + "</text>\n";
  out += "<text x=\"" + detail::fixed2(kMargin - 5) + "\" y=\"" + top + "\" text-anchor=\"end\">" +
         detail::tick_label(yr.hi) + "</text>\n";
  out += "</g>\n";

  out += "<g fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n";
  for (const auto& r : rows) {
    out += "<circle cx=\"" + detail::fixed2(px(r.x)) + "\" cy=\"" + detail::fixed2(py(r.y)) + "\" r=\"4\"/>\n";
  }
  out += "</g>\n";

  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rows[a].x < rows[b].x; });
  out += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& r = rows[order[k]];
    if (k) out += ' ';
    out += detail::fixed2(px(r.x)) + "," + detail::fixed2(py(r.yhat));
  }
  out += "\"/>\n</svg>\n";
  return out;
}

inline void emit_svg(const std::filesystem::path& plot_csv, const std::filesystem::path& out) {
  const auto rows = load_plot_csv(plot_csv);
  detail::write_file(out, render_svg(rows));
}

}  // namespace erm
