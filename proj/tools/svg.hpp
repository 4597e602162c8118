#pragma once

#include <string>
#include <utility>
#include <vector>

namespace soliton::tools {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool dashed = false;
  /// Series sharing a legend entry (e.g. the mirrored half of a silhouette) use the same colour index.
  int colour = -1;
  bool in_legend = true;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  int width = 720;
  int height = 480;
  bool equal_aspect = false;
};

/// Standalone SVG document. Output depends only on the input (fixed number formatting).
std::string render_svg(const Plot& plot);

/// Tick positions at 1, 2 or 5 times a power of ten covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int target = 6);

}  // namespace soliton::tools
