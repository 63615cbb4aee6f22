#include "frqme/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace frqme {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 160.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string fmt(double v, const char* spec = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

void header(std::ostringstream& out, const LinePlotOptions& o) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << escape(o.title)
      << "</text>\n";
  out << "<text x=\"" << kLeft + (kWidth - kLeft - kRight) / 2 << "\" y=\"" << kHeight - 15
      << "\" text-anchor=\"middle\">" << escape(o.x_label) << "</text>\n";
  out << "<text transform=\"translate(20," << kTop + (kHeight - kTop - kBottom) / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(o.y_label) << "</text>\n";
}

}  // namespace

std::string svg_line_plot(const std::vector<LineSeries>& series, const LinePlotOptions& options) {
  auto tx = [&](double x) { return options.log_x ? std::log10(x) : x; };
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
      if ((options.log_x && s.x[k] <= 0.0) || !std::isfinite(s.y[k])) continue;
      x0 = std::min(x0, tx(s.x[k]));
      x1 = std::max(x1, tx(s.x[k]));
      y0 = std::min(y0, s.y[k]);
      y1 = std::max(y1, s.y[k]);
    }
  }
  if (!(x1 > x0)) x1 = x0 + 1.0;
  if (!(y1 > y0)) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  if (!std::isfinite(x0)) x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (tx(x) - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::ostringstream out;
  header(out, options);
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double yv = y0 + (y1 - y0) * k / 4.0;
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << fmt(py(yv) + 4) << "\" text-anchor=\"end\">" << fmt(yv, "%.3g")
        << "</text>\n";
    const double xv = x0 + (x1 - x0) * k / 4.0;
    const double xpos = kLeft + pw * k / 4.0;
    out << "<text x=\"" << fmt(xpos) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
        << (options.log_x ? "1e" + fmt(xv, "%.1f") : fmt(xv, "%.3g")) << "</text>\n";
  }

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % std::size(kPalette)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < std::min(s.x.size(), s.y.size()); ++k) {
      if ((options.log_x && s.x[k] <= 0.0) || !std::isfinite(s.y[k])) continue;
      out << fmt(px(s.x[k])) << "," << fmt(py(s.y[k])) << " ";
    }
    out << "\"/>\n";
    out << "<text x=\"" << kWidth - kRight + 10 << "\" y=\"" << kTop + 16 * (si + 1) << "\" fill=\"" << color << "\">"
        << escape(s.label) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string svg_heat_map(const std::vector<std::vector<std::optional<double>>>& values,
                         const std::vector<double>& x_ticks, const std::vector<double>& y_ticks,
                         const LinePlotOptions& options) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::size_t cols = 0;
  for (const auto& row : values) {
    cols = std::max(cols, row.size());
    for (const auto& v : row) {
      if (v && std::isfinite(*v)) {
        lo = std::min(lo, *v);
        hi = std::max(hi, *v);
      }
    }
  }
  const std::size_t rows = values.size();
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  const double cw = cols ? pw / static_cast<double>(cols) : pw;
  const double ch = rows ? ph / static_cast<double>(rows) : ph;

  std::ostringstream out;
  header(out, options);
  out << "<defs><pattern id=\"nogap\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\">"
         "<rect width=\"6\" height=\"6\" fill=\"#ddd\"/><path d=\"M0,6 L6,0\" stroke=\"#999\"/></pattern></defs>\n";
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < values[r].size(); ++c) {
      const double x = kLeft + cw * static_cast<double>(c);
      const double y = kTop + ph - ch * static_cast<double>(r + 1);
      std::string fill = "url(#nogap)";
      if (const auto& v = values[r][c]; v && std::isfinite(*v)) {
        const double s = hi > lo ? (*v - lo) / (hi - lo) : 0.5;
        const int red = static_cast<int>(std::lround(255.0 * s));
        const int blue = 255 - red;
        fill = "rgb(" + std::to_string(red) + ",64," + std::to_string(blue) + ")";
      }
      out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"" << fmt(cw) << "\" height=\"" << fmt(ch)
          << "\" fill=\"" << fill << "\"/>\n";
    }
  }
  for (std::size_t c = 0; c < std::min(cols, x_ticks.size()); ++c)
    out << "<text x=\"" << fmt(kLeft + cw * (c + 0.5)) << "\" y=\"" << kTop + ph + 18 << "\" text-anchor=\"middle\">"
        << fmt(x_ticks[c], "%.3g") << "</text>\n";
  for (std::size_t r = 0; r < std::min(rows, y_ticks.size()); ++r)
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << fmt(kTop + ph - ch * (r + 0.5) + 4) << "\" text-anchor=\"end\">"
        << fmt(y_ticks[r], "%.3g") << "</text>\n";
  if (std::isfinite(lo)) {
    out << "<text x=\"" << kWidth - kRight + 10 << "\" y=\"" << kTop + 16 << "\">max " << fmt(hi, "%.4g")
        << "</text>\n";
    out << "<text x=\"" << kWidth - kRight + 10 << "\" y=\"" << kTop + 32 << "\">min " << fmt(lo, "%.4g")
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace frqme
