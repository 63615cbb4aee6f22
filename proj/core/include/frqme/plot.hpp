#pragma once

// Minimal static SVG rendering for quick looks at CSV outputs.

#include <optional>
#include <string>
#include <vector>

namespace frqme {

struct LineSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct LinePlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = true;  // non-positive x values are skipped on a log axis
};

std::string svg_line_plot(const std::vector<LineSeries>& series, const LinePlotOptions& options);

/// values[row][col]; missing cells are drawn hatched grey. Rows run along y.
std::string svg_heat_map(const std::vector<std::vector<std::optional<double>>>& values,
                         const std::vector<double>& x_ticks, const std::vector<double>& y_ticks,
                         const LinePlotOptions& options);

}  // namespace frqme
