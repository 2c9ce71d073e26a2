#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace otoclab::io {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool log_y = false;
  std::vector<PlotSeries> series;
};

/// Static SVG line plot. Non-finite points (and non-positive ones on a log axis) are skipped.
void write_svg_plot(const std::filesystem::path& path, const PlotSpec& spec);

}  // namespace otoclab::io
