#include "cpdc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace cpdc {

namespace {
constexpr double kWidth = 640, kHeight = 420, kMargin = 50;

const char* kSeriesColors[6] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}
}  // namespace

void write_svg_line(const std::filesystem::path& path, const std::vector<double>& x,
                    const std::vector<SvgSeries>& series, const std::string& title) {
  double xmin = x.empty() ? 0 : *std::min_element(x.begin(), x.end());
  double xmax = x.empty() ? 1 : *std::max_element(x.begin(), x.end());
  double ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& s : series)
    for (double v : s.values) {
      if (first) {
        ymin = ymax = v;
        first = false;
      }
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  if (xmax == xmin) xmax = xmin + 1;
  if (ymax == ymin) ymax = ymin + 1;
  const double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  auto px = [&](double v) { return kMargin + (v - xmin) / (xmax - xmin) * (kWidth - 2 * kMargin); };
  auto py = [&](double v) {
    return kHeight - kMargin - (v - ymin) / (ymax - ymin) * (kHeight - 2 * kMargin);
  };

  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file " + path.string());
  out << "<svg xmlns='http://www.w3.org/2000/svg' viewBox='0 0 " << kWidth << " " << kHeight
      << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' font-size='15'>" << title
      << "</text>\n";
  // axes
  out << "<line x1='" << kMargin << "' y1='" << kHeight - kMargin << "' x2='" << kWidth - kMargin
      << "' y2='" << kHeight - kMargin << "' stroke='black'/>\n";
  out << "<line x1='" << kMargin << "' y1='" << kMargin << "' x2='" << kMargin << "' y2='"
      << kHeight - kMargin << "' stroke='black'/>\n";
  out << "<text x='" << kMargin << "' y='" << kHeight - kMargin + 18 << "' font-size='11'>"
      << num(xmin) << "</text>\n";
  out << "<text x='" << kWidth - kMargin << "' y='" << kHeight - kMargin + 18
      << "' text-anchor='end' font-size='11'>" << num(xmax) << "</text>\n";
  out << "<text x='" << kMargin - 4 << "' y='" << kHeight - kMargin
      << "' text-anchor='end' font-size='11'>" << num(ymin) << "</text>\n";
  out << "<text x='" << kMargin - 4 << "' y='" << kMargin << "' text-anchor='end' font-size='11'>"
      << num(ymax) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    out << "<polyline fill='none' stroke='" << kSeriesColors[s % 6] << "' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < x.size() && i < series[s].values.size(); ++i)
      out << px(x[i]) << "," << py(series[s].values[i]) << " ";
    out << "'/>\n";
    out << "<text x='" << kWidth - kMargin - 4 << "' y='" << kMargin + 16 * (s + 1)
        << "' text-anchor='end' font-size='12' fill='" << kSeriesColors[s % 6] << "'>"
        << series[s].label << "</text>\n";
  }
  out << "</svg>\n";
}

void write_svg_heatmap(const std::filesystem::path& path, const std::vector<double>& x,
                       const std::vector<double>& y, const MatrixXd& w, const std::string& title) {
  if (x.empty() || y.empty()) throw ConfigError("write_svg_heatmap: empty axes");
  const double vmax = std::max(std::abs(w.maxCoeff()), std::abs(w.minCoeff()));
  auto color = [&](double v) {
    // Diverging: blue (negative) - white - red (positive).
    double r = vmax > 0 ? std::clamp(v / vmax, -1.0, 1.0) : 0.0;
    int red = static_cast<int>(255 * (r > 0 ? 1.0 : 1.0 + r));
    int green = static_cast<int>(255 * (1.0 - std::abs(r)));
    int blue = static_cast<int>(255 * (r < 0 ? 1.0 : 1.0 - r));
    char buf[10];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", red, green, blue);
    return std::string(buf);
  };

  const double plot_w = kWidth - 2 * kMargin, plot_h = kHeight - 2 * kMargin;
  const double cell_w = plot_w / static_cast<double>(x.size());
  const double cell_h = plot_h / static_cast<double>(y.size());

  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file " + path.string());
  out << "<svg xmlns='http://www.w3.org/2000/svg' viewBox='0 0 " << kWidth << " " << kHeight
      << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' font-size='15'>" << title
      << " (max " << num(w.maxCoeff()) << ", min " << num(w.minCoeff()) << ")</text>\n";
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) {
      const double cx = kMargin + cell_w * static_cast<double>(i);
      const double cy = kHeight - kMargin - cell_h * static_cast<double>(j + 1);
      out << "<rect x='" << cx << "' y='" << cy << "' width='" << cell_w + 0.5 << "' height='"
          << cell_h + 0.5 << "' fill='" << color(w(i, j)) << "'/>\n";
    }
  out << "<text x='" << kMargin << "' y='" << kHeight - kMargin + 18 << "' font-size='11'>x="
      << num(x.front()) << "</text>\n";
  out << "<text x='" << kWidth - kMargin << "' y='" << kHeight - kMargin + 18
      << "' text-anchor='end' font-size='11'>x=" << num(x.back()) << "</text>\n";
  out << "</svg>\n";
}

}  // namespace cpdc
