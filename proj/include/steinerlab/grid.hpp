#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "steinerlab/errors.hpp"
#include "steinerlab/vec.hpp"

namespace steinerlab {

/// Node layouts for sampled functions on a projection interval.
///  - Cosine: x_j = c - r cos(pi j/(N-1)); quadrature is Simpson in the angle,
///    which keeps square-root endpoint behaviour of smooth boundaries smooth.
///  - Panels: a union of uniform panels whose boundaries are breakpoints of a
///    piecewise-linear input; Simpson per panel (exact for linear data).
///  - Nodes: arbitrary sorted nodes, trapezoid rule.
enum class GridKind { Cosine, Panels, Nodes };

struct Grid {
  GridKind kind = GridKind::Nodes;
  std::vector<double> x;
  std::vector<double> w;     ///< quadrature weights, sum(w) == hi - lo
  std::vector<int> panels;   ///< Panels: node indices of panel boundaries

  size_t size() const { return x.size(); }
  double lo() const { return x.front(); }
  double hi() const { return x.back(); }

  /// Angle parameter of node j for Cosine grids.
  double t(size_t j) const { return kPi * static_cast<double>(j) / static_cast<double>(x.size() - 1); }
  double center() const { return 0.5 * (lo() + hi()); }
  double radius() const { return 0.5 * (hi() - lo()); }

  static Grid cosine(double lo, double hi, int n) {
    if (n < 5 || n % 2 == 0) fail(ErrorKind::InvalidArgument, "cosine grid needs an odd count >= 5");
    if (!(hi > lo)) fail(ErrorKind::EmptyProjection, "empty projection interval");
    Grid g;
    g.kind = GridKind::Cosine;
    g.x.resize(n);
    g.w.resize(n);
    double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
    int mid = (n - 1) / 2;
    for (int j = 0; j < mid; ++j) {
      double ct = std::cos(kPi * j / (n - 1));
      g.x[j] = c - r * ct;
      g.x[n - 1 - j] = c + r * ct;
    }
    g.x[0] = lo;
    g.x[n - 1] = hi;
    g.x[mid] = c;
    double dt = kPi / (n - 1);
    for (int j = 0; j < n; ++j) {
      double s = (j == 0 || j == n - 1) ? 1.0 : (j % 2 ? 4.0 : 2.0);
      g.w[j] = dt / 3.0 * s * r * std::sin(kPi * j / (n - 1));
    }
    g.panels = {0, n - 1};
    return g;
  }

  /// Panels between sorted breakpoints (lo and hi are added); about n nodes.
  static Grid panelled(std::vector<double> breaks, double lo, double hi, int n) {
    if (!(hi > lo)) fail(ErrorKind::EmptyProjection, "empty projection interval");
    double width = hi - lo, merge = 1e-12 * std::max(1.0, width);
    breaks.push_back(lo);
    breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());
    std::vector<double> b;
    for (double v : breaks) {
      if (v < lo || v > hi) continue;
      if (b.empty() || v - b.back() > merge) b.push_back(v);
    }
    b.front() = lo;
    if (b.back() != hi) {
      if (hi - b.back() <= merge) b.back() = hi; else b.push_back(hi);
    }
    if (b.size() < 2) fail(ErrorKind::EmptyProjection, "degenerate panel grid");
    Grid g;
    g.kind = GridKind::Panels;
    g.x.push_back(lo);
    g.w.push_back(0.0);
    g.panels.push_back(0);
    for (size_t i = 0; i + 1 < b.size(); ++i) {
      double a = b[i], c = b[i + 1];
      int m = 2 * static_cast<int>(std::lround(0.5 * (n - 1) * (c - a) / width));
      m = std::max(m, 2);
      double h = (c - a) / m;
      size_t base = g.x.size() - 1;
      for (int k = 1; k <= m; ++k) {
        g.x.push_back(k == m ? c : a + h * k);
        g.w.push_back(0.0);
      }
      for (int k = 0; k <= m; ++k) {
        double s = (k == 0 || k == m) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        g.w[base + k] += h / 3.0 * s;
      }
      g.panels.push_back(static_cast<int>(g.x.size() - 1));
    }
    return g;
  }

  static Grid nodes(std::vector<double> xs) {
    if (xs.size() < 2) fail(ErrorKind::EmptyProjection, "grid needs two nodes");
    for (size_t i = 1; i < xs.size(); ++i)
      if (!(xs[i] > xs[i - 1])) fail(ErrorKind::InvalidArgument, "grid nodes must increase strictly");
    Grid g;
    g.kind = GridKind::Nodes;
    g.x = std::move(xs);
    g.w.assign(g.x.size(), 0.0);
    for (size_t i = 0; i + 1 < g.x.size(); ++i) {
      double h = g.x[i + 1] - g.x[i];
      g.w[i] += 0.5 * h;
      g.w[i + 1] += 0.5 * h;
    }
    g.panels = {0, static_cast<int>(g.x.size() - 1)};
    return g;
  }

  double integrate(const std::vector<double>& v) const {
    double s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += w[i] * v[i];
    return s;
  }

  /// Piecewise-linear interpolation of nodal values; clamps outside [lo, hi].
  double interp(const std::vector<double>& v, double q) const {
    if (q <= x.front()) return v.front();
    if (q >= x.back()) return v.back();
    auto it = std::upper_bound(x.begin(), x.end(), q);
    size_t i = static_cast<size_t>(it - x.begin());
    double a = x[i - 1], b = x[i];
    double s = (q - a) / (b - a);
    return v[i - 1] + s * (v[i] - v[i - 1]);
  }

  bool same_nodes(const Grid& o) const { return kind == o.kind && x == o.x; }
};

}  // namespace steinerlab
