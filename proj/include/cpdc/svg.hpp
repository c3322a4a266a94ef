#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cpdc/types.hpp"

namespace cpdc {

struct SvgSeries {
  std::string label;
  std::vector<double> values;
};

/// Minimal headless line plot (one polyline per series, auto-scaled axes).
void write_svg_line(const std::filesystem::path& path, const std::vector<double>& x,
                    const std::vector<SvgSeries>& series, const std::string& title);

/// Heatmap of a matrix w(i,j) over axes (x_i, y_j), diverging colormap
/// centred at zero (negative regions read blue).
void write_svg_heatmap(const std::filesystem::path& path, const std::vector<double>& x,
                       const std::vector<double>& y, const MatrixXd& w, const std::string& title);

}  // namespace cpdc
