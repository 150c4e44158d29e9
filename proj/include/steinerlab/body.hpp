#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "steinerlab/errors.hpp"
#include "steinerlab/frame.hpp"
#include "steinerlab/grid.hpp"
#include "steinerlab/polygon.hpp"
#include "steinerlab/vec.hpp"

namespace steinerlab {

/// Counterclockwise polygon in strictly convex position.
struct Polygon {
  std::vector<Vec2> vertices;
};

/// Axis-aligned box in R^2 or R^3.
struct Box {
  VecN lo, hi;
};

/// Euclidean ball (the disc in the plane).
struct Ball {
  VecN center;
  double radius = 1.0;
};

/// Ellipse with semiaxes a, b along the directions at `angle` and angle + pi/2.
struct Ellipse {
  Vec2 center;
  double a = 1.0, b = 1.0, angle = 0.0;
};

/// {|X| <= w, k X^2 - depth <= s Y <= top} with X = x1 - c.x, Y = x2 - c.y and
/// s = orientation (+1 or -1).  The default is {x1^2 - 1 <= x2 <= 1}.
struct ParabolicCap {
  Vec2 center;
  double half_width = 1.0, curvature = 1.0, depth = 1.0, top = 1.0;
  double orientation = 1.0;
};

/// Smooth planar body with support h(t) = c0 + sum_k a_k cos kt + b_k sin kt
/// (a[k-1], b[k-1] hold the k-th coefficients).
struct FourierBody {
  double c0 = 1.0;
  std::vector<double> a, b;

  double h(double t) const {
    double s = c0;
    for (size_t k = 1; k <= a.size(); ++k) s += a[k - 1] * std::cos(k * t) + b[k - 1] * std::sin(k * t);
    return s;
  }
  /// h at the unit direction (c, s) = (cos t, sin t), harmonics by recurrence.
  double h_unit(double c, double s) const {
    double v = c0, ck = c, sk = s;
    for (size_t k = 0; k < a.size(); ++k) {
      v += a[k] * ck + b[k] * sk;
      double cn = ck * c - sk * s;
      sk = sk * c + ck * s;
      ck = cn;
    }
    return v;
  }
  double dh(double t) const {
    double s = 0;
    for (size_t k = 1; k <= a.size(); ++k) s += k * (-a[k - 1] * std::sin(k * t) + b[k - 1] * std::cos(k * t));
    return s;
  }
  double d2h(double t) const {
    double s = 0;
    for (size_t k = 1; k <= a.size(); ++k) s -= double(k * k) * (a[k - 1] * std::cos(k * t) + b[k - 1] * std::sin(k * t));
    return s;
  }
  /// Radius of curvature h + h'' at outer normal angle t.
  double rho(double t) const { return h(t) + d2h(t); }
  Vec2 point(double t) const {
    Vec2 n = from_angle(t);
    return n * h(t) + perp(n) * dh(t);
  }
  double area() const {
    double s = kPi * c0 * c0;
    for (size_t k = 1; k <= a.size(); ++k) s += 0.5 * kPi * (1.0 - double(k * k)) * (a[k - 1] * a[k - 1] + b[k - 1] * b[k - 1]);
    return s;
  }
};

/// Sampled support function.  In the plane the directions are kept sorted by
/// angle together with the half-plane intersection they define.
struct SupportTable {
  struct Planar {
    std::vector<Vec2> dirs;
    std::vector<double> vals;
    HalfplanePolygon hull;
    std::vector<double> cone_start;   ///< sorted normal-cone start angles
    std::vector<size_t> cone_vertex;  ///< vertex owning each cone
  };
  int dim = 2;
  std::vector<VecN> dirs;
  std::vector<double> vals;
  std::shared_ptr<const Planar> planar;  ///< cache, n = 2 only
};

/// Sampled overgraph/undergraph pair over the projection grid of a frame.
struct Slab {
  Frame frame;
  Grid grid;
  std::vector<double> f, g;
  bool linear = false;  ///< piecewise linear between nodes (exact polygon)
};

struct BodyFlags {
  bool unverified_convexity = false;  ///< produced by a combination with no convexity guarantee
  bool experimental = false;          ///< parameters outside the proven range
  bool sublinearity_failed = false;   ///< sampled support values fail sublinearity
  bool concavity_failed = false;      ///< sampled graphs fail discrete concavity
};

struct ConvexBody {
  int dim = 2;
  std::variant<Polygon, Box, Ball, Ellipse, ParabolicCap, FourierBody, SupportTable, Slab> repr;
  BodyFlags flags;

  template <class T> bool is() const { return std::holds_alternative<T>(repr); }
  template <class T> const T& as() const { return std::get<T>(repr); }

  std::string kind_name() const {
    static const char* names[] = {"polygon", "box", "disc", "ellipse", "cap", "fourier", "support", "slab"};
    return names[repr.index()];
  }
};

// ---------------------------------------------------------------- builders

inline ConvexBody make_polygon(const std::vector<Vec2>& points) {
  if (points.size() < 3) fail(ErrorKind::DegenerateInput, "a polygon needs at least three points");
  auto h = convex_hull(points);
  if (h.size() < 3 || polygon_area(h) <= 1e-14 * coordinate_scale(h) * coordinate_scale(h))
    fail(ErrorKind::DegenerateInput, "hull has empty interior");
  return ConvexBody{2, Polygon{std::move(h)}, {}};
}

inline ConvexBody make_box(const VecN& lo, const VecN& hi) {
  if (lo.size() != hi.size() || (lo.size() != 2 && lo.size() != 3))
    fail(ErrorKind::InvalidArgument, "box corners must be 2- or 3-vectors");
  for (size_t i = 0; i < lo.size(); ++i)
    if (!(hi[i] > lo[i])) fail(ErrorKind::DegenerateInput, "box has empty interior");
  return ConvexBody{static_cast<int>(lo.size()), Box{lo, hi}, {}};
}

inline ConvexBody make_disc(const VecN& center, double r) {
  if (center.size() != 2 && center.size() != 3) fail(ErrorKind::InvalidArgument, "ball center must be a 2- or 3-vector");
  if (!(r > 0)) fail(ErrorKind::DegenerateInput, "radius must be positive");
  return ConvexBody{static_cast<int>(center.size()), Ball{center, r}, {}};
}

inline ConvexBody make_ellipse(Vec2 c, double a, double b, double angle = 0.0) {
  if (!(a > 0 && b > 0)) fail(ErrorKind::DegenerateInput, "semiaxes must be positive");
  return ConvexBody{2, Ellipse{c, a, b, angle}, {}};
}

inline ConvexBody make_cap(ParabolicCap c) {
  if (!(c.half_width > 0) || c.curvature < 0 || !(c.top + c.depth > 0) || std::fabs(std::fabs(c.orientation) - 1) > 0)
    fail(ErrorKind::DegenerateInput, "invalid parabolic cap");
  return ConvexBody{2, c, {}};
}

inline ConvexBody make_fourier(FourierBody fb) {
  if (fb.a.size() != fb.b.size()) fail(ErrorKind::InvalidArgument, "coefficient lists differ in length");
  for (int i = 0; i < 4096; ++i) {
    double t = 2 * kPi * i / 4096;
    if (!(fb.rho(t) > 0)) fail(ErrorKind::DegenerateInput, "h + h'' must be positive");
  }
  return ConvexBody{2, std::move(fb), {}};
}

inline std::shared_ptr<const SupportTable::Planar> build_planar_table(const std::vector<VecN>& dirs, const std::vector<double>& vals) {
  auto pl = std::make_shared<SupportTable::Planar>();
  std::vector<size_t> order(dirs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::vector<double> ang(dirs.size());
  for (size_t i = 0; i < dirs.size(); ++i) ang[i] = angle_of(to_vec2(dirs[i]));
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return ang[a] < ang[b]; });
  for (size_t i : order) {
    pl->dirs.push_back(normalized(to_vec2(dirs[i])));
    pl->vals.push_back(vals[i]);
  }
  pl->hull = halfplane_intersection(pl->dirs, pl->vals);
  size_t m = pl->hull.vertices.size();
  std::vector<std::pair<double, size_t>> cones;
  for (size_t k = 0; k < m; ++k) {
    size_t line_before = pl->hull.next_line[(k + m - 1) % m];
    cones.push_back({angle_of(pl->dirs[line_before]), k});
  }
  std::sort(cones.begin(), cones.end());
  for (auto& c : cones) {
    pl->cone_start.push_back(c.first);
    pl->cone_vertex.push_back(c.second);
  }
  return pl;
}

/// Support table from directions (normalized internally) and values.
inline ConvexBody make_support_table(const std::vector<VecN>& dirs, const std::vector<double>& vals) {
  if (dirs.size() != vals.size() || dirs.empty()) fail(ErrorKind::InvalidArgument, "directions and values differ in length");
  int dim = static_cast<int>(dirs[0].size());
  SupportTable t;
  t.dim = dim;
  for (auto& d : dirs) {
    if (static_cast<int>(d.size()) != dim) fail(ErrorKind::InvalidArgument, "mixed direction dimensions");
    double n = norm(d);
    if (!(n > 0)) fail(ErrorKind::InvalidArgument, "zero direction");
    t.dirs.push_back(scaled(d, 1.0 / n));
  }
  t.vals = vals;
  if (dim == 2) t.planar = build_planar_table(t.dirs, t.vals);
  return ConvexBody{dim, std::move(t), {}};
}

inline ConvexBody make_slab(const Frame& frame, Grid grid, std::vector<double> f, std::vector<double> g, bool linear = false) {
  if (frame.dim() != 2) fail(ErrorKind::Unsupported, "slabs are planar");
  if (f.size() != grid.size() || g.size() != grid.size()) fail(ErrorKind::InvalidArgument, "slab sample counts differ");
  double scale = 0;
  for (size_t i = 0; i < f.size(); ++i) scale = std::max({scale, std::fabs(f[i]), std::fabs(g[i])});
  for (size_t i = 0; i < f.size(); ++i)
    if (f[i] + g[i] < -1e-12 * std::max(1.0, scale)) fail(ErrorKind::DegenerateInput, "slab has an empty chord");
  return ConvexBody{2, Slab{frame, std::move(grid), std::move(f), std::move(g), linear}, {}};
}

// ------------------------------------------------------------ named bodies

inline ConvexBody unit_square() { return make_polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}); }
inline ConvexBody unit_diamond() { return make_polygon({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}); }
inline ConvexBody unit_disc() { return make_disc({0, 0}, 1.0); }
/// {-1 <= x1 <= 1, x1^2 - 1 <= x2 <= 1}.
inline ConvexBody parabolic_k3() { return make_cap(ParabolicCap{}); }
inline ConvexBody rectangle(double x0, double x1, double y0, double y1) {
  return make_polygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}});
}

}  // namespace steinerlab
