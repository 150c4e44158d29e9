#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "steinerlab/geometry.hpp"

namespace steinerlab {

struct SvgOptions {
  int width = 480;
  int samples = 720;   ///< boundary samples for curved bodies
  bool axes = true;
};

namespace detail {

inline std::string fmt3(double v) {
  char buf[64];
  double r = std::round(v * 1000.0) / 1000.0;
  if (r == 0) r = 0;  // no "-0.000"
  std::snprintf(buf, sizeof buf, "%.3f", r);
  return buf;
}

}  // namespace detail

/// Deterministic SVG of planar bodies: outlines in a fixed palette, y axis
/// pointing up, viewBox from the rounded joint extent, optional legend.
inline std::string render_svg(const std::vector<std::pair<std::string, ConvexBody>>& bodies, const SvgOptions& opt = {}) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  std::vector<std::vector<Vec2>> outlines;
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  bool first = true;
  for (const auto& [label, b] : bodies) {
    if (b.dim != 2) fail(ErrorKind::Render3DUnsupported, "only planar bodies can be rendered");
    auto pts = to_polygon(b, opt.samples);
    for (auto p : pts) {
      if (first) { x0 = x1 = p.x; y0 = y1 = p.y; first = false; }
      x0 = std::min(x0, p.x); x1 = std::max(x1, p.x);
      y0 = std::min(y0, p.y); y1 = std::max(y1, p.y);
    }
    outlines.push_back(std::move(pts));
  }
  if (first) x0 = y0 = -1, x1 = y1 = 1;
  // Rounded extent with a margin; scale so that the width is opt.width units.
  double pad = 0.1 * std::max(x1 - x0, y1 - y0) + 1e-9;
  x0 = std::floor((x0 - pad) * 10) / 10; x1 = std::ceil((x1 + pad) * 10) / 10;
  y0 = std::floor((y0 - pad) * 10) / 10; y1 = std::ceil((y1 + pad) * 10) / 10;
  double scale = opt.width / (x1 - x0);
  double legend_h = bodies.size() > 1 || (!bodies.empty() && !bodies[0].first.empty()) ? 18.0 * bodies.size() + 8 : 0;
  double W = opt.width, H = (y1 - y0) * scale;
  auto X = [&](double x) { return detail::fmt3((x - x0) * scale); };
  auto Y = [&](double y) { return detail::fmt3((y1 - y) * scale); };
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + detail::fmt3(W) + " " + detail::fmt3(H + legend_h) +
       "\" width=\"" + detail::fmt3(W) + "\" height=\"" + detail::fmt3(H + legend_h) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + detail::fmt3(W) + "\" height=\"" + detail::fmt3(H + legend_h) + "\" fill=\"white\"/>\n";
  if (opt.axes) {
    if (x0 < 0 && x1 > 0)
      s += "<line x1=\"" + X(0) + "\" y1=\"0.000\" x2=\"" + X(0) + "\" y2=\"" + detail::fmt3(H) +
           "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    if (y0 < 0 && y1 > 0)
      s += "<line x1=\"0.000\" y1=\"" + Y(0) + "\" x2=\"" + detail::fmt3(W) + "\" y2=\"" + Y(0) +
           "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
  }
  for (size_t i = 0; i < outlines.size(); ++i) {
    std::string d;
    for (size_t k = 0; k < outlines[i].size(); ++k)
      d += (k ? " L " : "M ") + X(outlines[i][k].x) + " " + Y(outlines[i][k].y);
    d += " Z";
    s += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + palette[i % 6] + "\" stroke-width=\"2\"/>\n";
  }
  if (legend_h > 0)
    for (size_t i = 0; i < bodies.size(); ++i) {
      double y = H + 18.0 * (i + 1);
      s += "<line x1=\"8.000\" y1=\"" + detail::fmt3(y - 4) + "\" x2=\"28.000\" y2=\"" + detail::fmt3(y - 4) + "\" stroke=\"" +
           palette[i % 6] + "\" stroke-width=\"2\"/>\n";
      s += "<text x=\"34.000\" y=\"" + detail::fmt3(y) + "\" font-family=\"sans-serif\" font-size=\"12\">" + bodies[i].first +
           "</text>\n";
    }
  s += "</svg>\n";
  return s;
}

}  // namespace steinerlab
