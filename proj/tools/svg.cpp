#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace soliton::tools {

namespace {

constexpr const char* kPalette[] = {"#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad", "#d35400", "#555555", "#16a085"};

std::string fixed(double x, int digits = 2) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string tick_label(double x, double step) {
  const int digits = std::max(0, static_cast<int>(std::ceil(-std::log10(step) - 1e-9)));
  if (std::abs(x) < 0.5 * step) x = 0.0;
  return fixed(x, digits);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<double> nice_ticks(double lo, double hi, int target) {
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / std::max(target, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double f : {1.0, 2.0, 5.0, 10.0}) {
    step = f * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step - 1e-9) * step; t <= hi + 1e-9 * step; t += step) ticks.push_back(t);
  return ticks;
}

std::string render_svg(const Plot& plot) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : plot.series)
    for (const auto& [x, y] : s.points) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  if (!(x1 > x0)) { x0 -= 0.5; x1 += 0.5; }
  if (!(y1 > y0)) { y0 -= 0.5; y1 += 0.5; }

  const double left = 70, right = 20, top = plot.title.empty() ? 20 : 40, bottom = 55;
  const double pw = plot.width - left - right;
  const double ph = plot.height - top - bottom;
  if (plot.equal_aspect) {
    // Widen whichever range is too narrow so one unit has the same length on both axes.
    const double sx = pw / (x1 - x0), sy = ph / (y1 - y0);
    if (sx > sy) {
      const double mid = 0.5 * (x0 + x1), half = 0.5 * pw / sy;
      x0 = mid - half;
      x1 = mid + half;
    } else {
      const double mid = 0.5 * (y0 + y1), half = 0.5 * ph / sx;
      y0 = mid - half;
      y1 = mid + half;
    }
  }
  const auto xticks = nice_ticks(x0, x1);
  const auto yticks = nice_ticks(y0, y1);
  const double xstep = xticks.size() > 1 ? xticks[1] - xticks[0] : 1.0;
  const double ystep = yticks.size() > 1 ? yticks[1] - yticks[0] : 1.0;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width << "\" height=\"" << plot.height
     << "\" viewBox=\"0 0 " << plot.width << ' ' << plot.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!plot.title.empty())
    os << "<text x=\"" << fixed(plot.width / 2.0) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
       << escape(plot.title) << "</text>\n";

  os << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (double t : xticks)
    os << "<line x1=\"" << fixed(px(t)) << "\" y1=\"" << fixed(top) << "\" x2=\"" << fixed(px(t)) << "\" y2=\""
       << fixed(top + ph) << "\"/>\n";
  for (double t : yticks)
    os << "<line x1=\"" << fixed(left) << "\" y1=\"" << fixed(py(t)) << "\" x2=\"" << fixed(left + pw) << "\" y2=\""
       << fixed(py(t)) << "\"/>\n";
  os << "</g>\n";
  os << "<rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\"" << fixed(pw) << "\" height=\""
     << fixed(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  os << "<g text-anchor=\"middle\">\n";
  for (double t : xticks)
    os << "<text x=\"" << fixed(px(t)) << "\" y=\"" << fixed(top + ph + 16) << "\">" << tick_label(t, xstep)
       << "</text>\n";
  os << "</g>\n<g text-anchor=\"end\">\n";
  for (double t : yticks)
    os << "<text x=\"" << fixed(left - 6) << "\" y=\"" << fixed(py(t) + 4) << "\">" << tick_label(t, ystep)
       << "</text>\n";
  os << "</g>\n";
  os << "<text x=\"" << fixed(left + pw / 2) << "\" y=\"" << fixed(plot.height - 12.0)
     << "\" text-anchor=\"middle\">" << escape(plot.x_label) << "</text>\n";
  os << "<text transform=\"translate(16 " << fixed(top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
     << escape(plot.y_label) << "</text>\n";

  os << "<clipPath id=\"plot-area\"><rect x=\"" << fixed(left) << "\" y=\"" << fixed(top) << "\" width=\""
     << fixed(pw) << "\" height=\"" << fixed(ph) << "\"/></clipPath>\n";
  os << "<g clip-path=\"url(#plot-area)\" fill=\"none\" stroke-width=\"1.8\">\n";
  int next_colour = 0;
  std::vector<std::pair<std::string, std::pair<int, bool>>> legend;
  for (const auto& s : plot.series) {
    const int c = s.colour >= 0 ? s.colour : next_colour++;
    const char* colour = kPalette[c % std::size(kPalette)];
    os << "<polyline stroke=\"" << colour << "\"";
    if (s.dashed) os << " stroke-dasharray=\"6 4\"";
    os << " points=\"";
    for (std::size_t i = 0; i < s.points.size(); ++i)
      os << (i ? " " : "") << fixed(px(s.points[i].first)) << ',' << fixed(py(s.points[i].second));
    os << "\"/>\n";
    if (s.in_legend) legend.push_back({s.label, {c, s.dashed}});
  }
  os << "</g>\n";

  os << "<g font-size=\"12\">\n";
  for (std::size_t i = 0; i < legend.size(); ++i) {
    const double ly = top + 16 + 18.0 * i;
    const char* colour = kPalette[legend[i].second.first % std::size(kPalette)];
    os << "<line x1=\"" << fixed(left + 12) << "\" y1=\"" << fixed(ly) << "\" x2=\"" << fixed(left + 40)
       << "\" y2=\"" << fixed(ly) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"";
    if (legend[i].second.second) os << " stroke-dasharray=\"6 4\"";
    os << "/>\n<text x=\"" << fixed(left + 46) << "\" y=\"" << fixed(ly + 4) << "\">" << escape(legend[i].first)
       << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace soliton::tools
