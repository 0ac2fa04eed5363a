#include "luba/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace luba {

namespace {

constexpr int kWidth = 640;
constexpr int kHeight = 400;
constexpr int kLeft = 64;
constexpr int kRight = 24;
constexpr int kTop = 40;
constexpr int kBottom = 48;
constexpr int kPlotW = kWidth - kLeft - kRight;
constexpr int kPlotH = kHeight - kTop - kBottom;

std::string num(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

void open_svg(std::ostringstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"14\">"
      << title << "</text>\n";
}

void axes(std::ostringstream& out, const std::string& x_label, const std::string& y_label,
          double x_lo, double x_hi, double y_lo, double y_hi) {
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kPlotW << "\" height=\""
      << kPlotH << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << kLeft + kPlotW / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label
      << "</text>\n";
  out << "<text x=\"16\" y=\"" << kTop + kPlotH / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
         "transform=\"rotate(-90 16 "
      << kTop + kPlotH / 2 << ")\">" << y_label << "</text>\n";
  // corner tick labels
  out << "<text x=\"" << kLeft << "\" y=\"" << kHeight - 30
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << num(x_lo)
      << "</text>\n";
  out << "<text x=\"" << kLeft + kPlotW << "\" y=\"" << kHeight - 30
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << num(x_hi)
      << "</text>\n";
  out << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + kPlotH + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << num(y_lo)
      << "</text>\n";
  out << "<text x=\"" << kLeft - 6 << "\" y=\"" << kTop + 10
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << num(y_hi)
      << "</text>\n";
}

}  // namespace

std::string svg_histogram(const std::vector<std::pair<Bid, std::uint32_t>>& bars,
                          const std::string& title) {
  std::ostringstream out;
  open_svg(out, title);
  if (bars.empty()) {
    out << "</svg>\n";
    return out.str();
  }
  std::uint32_t peak = 1;
  for (const auto& [bid, count] : bars) peak = std::max(peak, count);
  const double x_lo = static_cast<double>(bars.front().first);
  const double x_hi = static_cast<double>(bars.back().first);
  axes(out, "integer (cents)", "bids", x_lo, x_hi, 0.0, static_cast<double>(peak));

  const double bar_w = static_cast<double>(kPlotW) / static_cast<double>(bars.size());
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const double h = static_cast<double>(kPlotH) * static_cast<double>(bars[i].second) /
                     static_cast<double>(peak);
    if (h <= 0.0) continue;
    out << "<rect x=\"" << num(kLeft + bar_w * static_cast<double>(i)) << "\" y=\""
        << num(kTop + kPlotH - h) << "\" width=\"" << num(std::max(bar_w - 0.5, 0.5))
        << "\" height=\"" << num(h) << "\" fill=\"#4878cf\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string svg_cdf(const std::vector<std::pair<double, double>>& points,
                    const std::string& title) {
  std::ostringstream out;
  open_svg(out, title);
  if (points.empty()) {
    out << "</svg>\n";
    return out.str();
  }
  const double x_lo = 0.0;
  const double x_hi = std::max(points.back().first, 1e-9);
  axes(out, "winning bid / value (%)", "cum fraction", x_lo, x_hi, 0.0, 1.0);

  const auto px = [&](double x) { return kLeft + kPlotW * (x - x_lo) / (x_hi - x_lo); };
  const auto py = [&](double f) { return kTop + kPlotH * (1.0 - f); };
  std::ostringstream path;
  double prev_f = 0.0;
  path << "M " << num(px(0.0)) << " " << num(py(0.0));
  for (const auto& [ratio, frac] : points) {
    path << " L " << num(px(ratio)) << " " << num(py(prev_f));
    path << " L " << num(px(ratio)) << " " << num(py(frac));
    prev_f = frac;
  }
  path << " L " << num(px(x_hi)) << " " << num(py(prev_f));
  out << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"#c44e52\" stroke-width=\"1.5\"/>\n";
  out << "</svg>\n";
  return out.str();
}

std::string svg_heatmap(const std::vector<GridCell>& grid, const std::string& title) {
  std::ostringstream out;
  open_svg(out, title);
  if (grid.empty()) {
    out << "</svg>\n";
    return out.str();
  }
  std::map<double, int> xs, ys;
  double perf_lo = 0.0, perf_hi = 0.0;
  bool any = false;
  for (const GridCell& cell : grid) {
    xs.emplace(cell.x, 0);
    ys.emplace(cell.y, 0);
    if (cell.defined) {
      perf_lo = any ? std::min(perf_lo, cell.performance) : cell.performance;
      perf_hi = any ? std::max(perf_hi, cell.performance) : cell.performance;
      any = true;
    }
  }
  int index = 0;
  for (auto& [value, slot] : xs) slot = index++;
  index = 0;
  for (auto& [value, slot] : ys) slot = index++;

  axes(out, "y (%)", "x (%)", ys.begin()->first, ys.rbegin()->first, xs.begin()->first,
       xs.rbegin()->first);

  const double cell_w = static_cast<double>(kPlotW) / static_cast<double>(ys.size());
  const double cell_h = static_cast<double>(kPlotH) / static_cast<double>(xs.size());
  const double span = perf_hi > perf_lo ? perf_hi - perf_lo : 1.0;
  for (const GridCell& cell : grid) {
    const int col = ys.at(cell.y);
    const int row = xs.at(cell.x);
    std::string fill = "#cccccc";
    if (cell.defined) {
      const double t = (cell.performance - perf_lo) / span;
      const int r = static_cast<int>(std::lround(40 + 215 * t));
      const int b = static_cast<int>(std::lround(255 - 215 * t));
      char color[10];
      std::snprintf(color, sizeof(color), "#%02x30%02x", r, b);
      fill = color;
    }
    out << "<rect x=\"" << num(kLeft + cell_w * col) << "\" y=\"" << num(kTop + cell_h * row)
        << "\" width=\"" << num(cell_w) << "\" height=\"" << num(cell_h) << "\" fill=\"" << fill
        << "\"/>\n";
  }
  out << "<text x=\"" << kLeft + kPlotW << "\" y=\"" << kTop - 6
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">performance "
      << num(perf_lo) << " .. " << num(perf_hi) << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace luba
