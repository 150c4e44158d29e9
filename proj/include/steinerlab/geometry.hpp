#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "steinerlab/body.hpp"

namespace steinerlab {

/// Uniform planar direction grid theta_j = 2 pi j / n.
inline std::vector<Vec2> direction_grid(int n) {
  std::vector<Vec2> d(n);
  for (int j = 0; j < n; ++j) d[j] = from_angle(2 * kPi * j / n);
  return d;
}

/// Near-uniform spherical directions (Fibonacci lattice).
inline std::vector<VecN> sphere_grid(int n) {
  std::vector<VecN> d(n);
  double golden = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    double z = 1.0 - (2.0 * i + 1.0) / n;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    d[i] = {r * std::cos(golden * i), r * std::sin(golden * i), z};
  }
  return d;
}

/// Degenerate convex sets (a point, a segment) for use as Minkowski operands.
inline ConvexBody make_point(Vec2 p) { return ConvexBody{2, Polygon{{p}}, {}}; }
inline ConvexBody make_segment(Vec2 a, Vec2 b) { return ConvexBody{2, Polygon{convex_hull({a, b})}, {}}; }

namespace detail {

inline double cap_support(const ParabolicCap& c, Vec2 d) {
  double ex = d.x, ez = c.orientation * d.y;
  double w = c.half_width, k = c.curvature;
  double best = std::max(w * std::fabs(ex) + ez * c.top, w * std::fabs(ex) + ez * (k * w * w - c.depth));
  if (ez < 0 && k > 0) {
    double X = std::clamp(-ex / (2 * k * ez), -w, w);
    best = std::max(best, ex * X + ez * (k * X * X - c.depth));
  }
  return dot(c.center, d) + best;
}

inline double ellipse_h0(const Ellipse& e, Vec2 d) {
  Vec2 e1 = from_angle(e.angle), e2 = perp(e1);
  double p = e.a * dot(d, e1), q = e.b * dot(d, e2);
  return std::sqrt(p * p + q * q);
}

inline double table_support(const SupportTable::Planar& t, Vec2 d) {
  double th = angle_of(d);
  auto it = std::upper_bound(t.cone_start.begin(), t.cone_start.end(), th);
  size_t i = it == t.cone_start.begin() ? t.cone_start.size() - 1 : static_cast<size_t>(it - t.cone_start.begin()) - 1;
  return dot(t.hull.vertices[t.cone_vertex[i]], d);
}

inline double slab_support(const Slab& s, Vec2 d) {
  Vec2 u = s.frame.u2(), w = s.frame.w2();
  double du = dot(d, u), dw = dot(d, w), m = -INFINITY;
  for (size_t j = 0; j < s.grid.size(); ++j) {
    double base = s.grid.x[j] * dw;
    m = std::max(m, base + (du >= 0 ? s.f[j] * du : -s.g[j] * du));
  }
  return m;
}

/// Best-effort spatial interpolation: cheapest conic combination of three
/// nearby tabulated directions (an upper bound that is exact at vertices).
inline double table_support3(const SupportTable& t, const VecN& d) {
  double n = norm(d);
  if (n == 0) return 0;
  VecN q = scaled(d, 1.0 / n);
  std::vector<std::pair<double, size_t>> near;
  for (size_t i = 0; i < t.dirs.size(); ++i) near.push_back({-dot(t.dirs[i], q), i});
  size_t k = std::min<size_t>(12, near.size());
  std::partial_sort(near.begin(), near.begin() + k, near.end());
  if (-near[0].first > 1 - 1e-14) return n * t.vals[near[0].second];
  double best = INFINITY;
  for (size_t a = 0; a < k; ++a)
    for (size_t b = a + 1; b < k; ++b)
      for (size_t c = b + 1; c < k; ++c) {
        const VecN &A = t.dirs[near[a].second], &B = t.dirs[near[b].second], &C = t.dirs[near[c].second];
        double det = A[0] * (B[1] * C[2] - B[2] * C[1]) - A[1] * (B[0] * C[2] - B[2] * C[0]) + A[2] * (B[0] * C[1] - B[1] * C[0]);
        if (std::fabs(det) < 1e-12) continue;
        auto solve = [&](const VecN& X, const VecN& Y, const VecN& Z) {
          return (X[0] * (Y[1] * Z[2] - Y[2] * Z[1]) - X[1] * (Y[0] * Z[2] - Y[2] * Z[0]) + X[2] * (Y[0] * Z[1] - Y[1] * Z[0])) / det;
        };
        // Cramer's rule for q = la A + lb B + lc C (columns).
        double la = solve(q, B, C), lb = solve(A, q, C), lc = solve(A, B, q);
        if (la < -1e-12 || lb < -1e-12 || lc < -1e-12) continue;
        best = std::min(best, la * t.vals[near[a].second] + lb * t.vals[near[b].second] + lc * t.vals[near[c].second]);
      }
  if (!std::isfinite(best)) best = t.vals[near[0].second] / std::max(-near[0].first, 1e-12);
  return n * best;
}

}  // namespace detail

/// Support function h_K(d) for a planar body; d need not be a unit vector.
inline double support(const ConvexBody& body, Vec2 d) {
  if (body.dim != 2) fail(ErrorKind::InvalidArgument, "planar support on a spatial body");
  return std::visit(
      [&](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          return polygon_support(r.vertices, d);
        } else if constexpr (std::is_same_v<T, Box>) {
          return std::max(r.lo[0] * d.x, r.hi[0] * d.x) + std::max(r.lo[1] * d.y, r.hi[1] * d.y);
        } else if constexpr (std::is_same_v<T, Ball>) {
          return r.center[0] * d.x + r.center[1] * d.y + r.radius * norm(d);
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          return dot(r.center, d) + detail::ellipse_h0(r, d);
        } else if constexpr (std::is_same_v<T, ParabolicCap>) {
          return detail::cap_support(r, d);
        } else if constexpr (std::is_same_v<T, FourierBody>) {
          double n = norm(d);
          return n == 0 ? 0.0 : n * r.h_unit(d.x / n, d.y / n);
        } else if constexpr (std::is_same_v<T, SupportTable>) {
          return detail::table_support(*r.planar, d);
        } else {
          return detail::slab_support(r, d);
        }
      },
      body.repr);
}

/// Dimension-generic support function (n = 3 is best-effort).
inline double support(const ConvexBody& body, const VecN& d) {
  if (static_cast<int>(d.size()) != body.dim) fail(ErrorKind::InvalidArgument, "direction dimension mismatch");
  if (body.dim == 2) return support(body, to_vec2(d));
  if (body.is<Box>()) {
    const auto& b = body.as<Box>();
    double s = 0;
    for (int i = 0; i < 3; ++i) s += std::max(b.lo[i] * d[i], b.hi[i] * d[i]);
    return s;
  }
  if (body.is<Ball>()) {
    const auto& b = body.as<Ball>();
    return dot(b.center, d) + b.radius * norm(d);
  }
  if (body.is<SupportTable>()) return detail::table_support3(body.as<SupportTable>(), d);
  fail(ErrorKind::Unsupported, "spatial support for this representation");
}

/// Point on the upper boundary chain and lower chain of a slab, in the plane.
inline Vec2 slab_point(const Slab& s, size_t j, bool upper) {
  double t = upper ? s.f[j] : -s.g[j];
  return s.frame.w2() * s.grid.x[j] + s.frame.u2() * t;
}

/// Vertices of a polygon equal to (polygons, boxes, tables, linear slabs) or
/// inscribed in (smooth bodies, sampled at n normals) the body.
inline std::vector<Vec2> to_polygon(const ConvexBody& body, int n = 1024) {
  if (body.dim != 2) fail(ErrorKind::Unsupported, "polygon conversion is planar");
  return std::visit(
      [&](const auto& r) -> std::vector<Vec2> {
        using T = std::decay_t<decltype(r)>;
        std::vector<Vec2> pts;
        if constexpr (std::is_same_v<T, Polygon>) {
          return r.vertices;
        } else if constexpr (std::is_same_v<T, Box>) {
          return convex_hull({{r.lo[0], r.lo[1]}, {r.hi[0], r.lo[1]}, {r.hi[0], r.hi[1]}, {r.lo[0], r.hi[1]}});
        } else if constexpr (std::is_same_v<T, Ball>) {
          for (int j = 0; j < n; ++j) pts.push_back(Vec2{r.center[0], r.center[1]} + from_angle(2 * kPi * j / n) * r.radius);
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          Vec2 e1 = from_angle(r.angle), e2 = perp(e1);
          for (int j = 0; j < n; ++j) {
            double t = 2 * kPi * j / n;
            pts.push_back(r.center + e1 * (r.a * std::cos(t)) + e2 * (r.b * std::sin(t)));
          }
        } else if constexpr (std::is_same_v<T, ParabolicCap>) {
          double s = r.orientation, w = r.half_width;
          pts.push_back(r.center + Vec2{-w, s * r.top});
          pts.push_back(r.center + Vec2{w, s * r.top});
          for (int j = 0; j <= n; ++j) {
            double X = -w + 2 * w * j / n;
            pts.push_back(r.center + Vec2{X, s * (r.curvature * X * X - r.depth)});
          }
        } else if constexpr (std::is_same_v<T, FourierBody>) {
          for (int j = 0; j < n; ++j) pts.push_back(r.point(2 * kPi * j / n));
        } else if constexpr (std::is_same_v<T, SupportTable>) {
          return r.planar->hull.vertices;
        } else {
          for (size_t j = 0; j < r.grid.size(); ++j) {
            pts.push_back(slab_point(r, j, true));
            pts.push_back(slab_point(r, j, false));
          }
        }
        return convex_hull(pts);
      },
      body.repr);
}

/// Closed interval.
struct Interval {
  double lo = 0, hi = 0;
  double length() const { return hi - lo; }
};

/// K | span{axis} expressed in the coordinate along `axis`.
inline Interval project_onto(const ConvexBody& body, Vec2 axis) {
  if (body.is<Slab>()) {
    const auto& s = body.as<Slab>();
    Vec2 w = s.frame.w2();
    if (std::fabs(axis.x - w.x) < 1e-12 && std::fabs(axis.y - w.y) < 1e-12) return {s.grid.lo(), s.grid.hi()};
    if (std::fabs(axis.x + w.x) < 1e-12 && std::fabs(axis.y + w.y) < 1e-12) return {-s.grid.hi(), -s.grid.lo()};
  }
  return {-support(body, -axis), support(body, axis)};
}

/// Planar projection onto u-perp (coordinate along frame.basis[0]).
inline Interval project(const ConvexBody& body, const Frame& frame) { return project_onto(body, frame.w2()); }

/// Spatial projection onto u-perp as a planar support table in basis coordinates.
inline ConvexBody project3(const ConvexBody& body, const Frame& frame, int n = 1024) {
  if (body.dim != 3) fail(ErrorKind::InvalidArgument, "project3 expects a spatial body");
  std::vector<VecN> dirs;
  std::vector<double> vals;
  for (auto d : direction_grid(n)) {
    VecN v = added(scaled(frame.basis[0], d.x), scaled(frame.basis[1], d.y));
    dirs.push_back(to_vecn(d));
    vals.push_back(support(body, v));
  }
  return make_support_table(dirs, vals);
}

inline bool contains(const ConvexBody& body, Vec2 p, double tol = 1e-12) {
  if (body.is<Polygon>()) {
    const auto& v = body.as<Polygon>().vertices;
    if (v.size() < 3) return false;
    for (size_t i = 0; i < v.size(); ++i) {
      Vec2 a = v[i], b = v[(i + 1) % v.size()];
      if (cross(b - a, p - a) < -tol * norm(b - a)) return false;
    }
    return true;
  }
  if (body.is<Ball>()) {
    const auto& b = body.as<Ball>();
    return norm(p - Vec2{b.center[0], b.center[1]}) <= b.radius + tol;
  }
  if (body.is<Box>()) {
    const auto& b = body.as<Box>();
    return p.x >= b.lo[0] - tol && p.x <= b.hi[0] + tol && p.y >= b.lo[1] - tol && p.y <= b.hi[1] + tol;
  }
  if (body.is<SupportTable>()) {
    const auto& t = *body.as<SupportTable>().planar;
    for (size_t i = 0; i < t.dirs.size(); ++i)
      if (dot(p, t.dirs[i]) > t.vals[i] + tol) return false;
    return true;
  }
  for (auto d : direction_grid(1024))
    if (dot(p, d) > support(body, d) + tol) return false;
  return true;
}

/// Sup-norm gap of the support functions over n uniform directions.
inline double hausdorff_distance(const ConvexBody& a, const ConvexBody& b, int n = 4096) {
  double m = 0;
  for (auto d : direction_grid(n)) m = std::max(m, std::fabs(support(a, d) - support(b, d)));
  return m;
}

/// max |x| over the body (max of h over the circle).
inline double circumradius(const ConvexBody& body, int n = 1024) {
  if (body.is<Polygon>()) {
    double m = 0;
    for (auto v : body.as<Polygon>().vertices) m = std::max(m, norm(v));
    return m;
  }
  double m = 0;
  for (auto d : direction_grid(n)) m = std::max(m, support(body, d));
  return m;
}

/// Distance from the origin to the boundary (min of h); negative if the
/// origin is outside.
inline double inradius_about_origin(const ConvexBody& body, int n = 1024) {
  if (body.is<Polygon>()) {
    const auto& v = body.as<Polygon>().vertices;
    if (v.size() < 3) return 0;
    double m = INFINITY;
    for (size_t i = 0; i < v.size(); ++i) {
      Vec2 a = v[i], b = v[(i + 1) % v.size()];
      m = std::min(m, cross(b - a, -a) / norm(b - a));
    }
    return m;
  }
  double m = INFINITY;
  for (auto d : direction_grid(n)) m = std::min(m, support(body, d));
  return m;
}

inline bool origin_interior(const ConvexBody& body) { return inradius_about_origin(body) > 0; }

inline ConvexBody polygon_body(std::vector<Vec2> v) { return ConvexBody{2, Polygon{convex_hull(std::move(v))}, {}}; }

inline ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b, int n = 1024) {
  if (a.dim != b.dim) fail(ErrorKind::InvalidArgument, "dimension mismatch");
  auto polygonal = [](const ConvexBody& k) { return k.is<Polygon>() || (k.is<Box>() && k.dim == 2); };
  if (a.dim == 2 && polygonal(a) && polygonal(b))
    return polygon_body(minkowski_sum_polygons(to_polygon(a), to_polygon(b)));
  if (a.is<Ball>() && b.is<Ball>()) {
    const auto &p = a.as<Ball>(), &q = b.as<Ball>();
    return make_disc(added(p.center, q.center), p.radius + q.radius);
  }
  std::vector<VecN> dirs;
  std::vector<double> vals;
  if (a.dim == 2) {
    for (auto d : direction_grid(n)) {
      dirs.push_back(to_vecn(d));
      vals.push_back(support(a, d) + support(b, d));
    }
  } else {
    for (auto& d : sphere_grid(n)) {
      dirs.push_back(d);
      vals.push_back(support(a, d) + support(b, d));
    }
  }
  return make_support_table(dirs, vals);
}

inline ConvexBody translate(const ConvexBody& body, Vec2 t) {
  if (body.dim != 2) fail(ErrorKind::Unsupported, "translation is planar");
  ConvexBody out = body;
  std::visit(
      [&](auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          for (auto& v : r.vertices) v += t;
        } else if constexpr (std::is_same_v<T, Box>) {
          r.lo[0] += t.x; r.hi[0] += t.x; r.lo[1] += t.y; r.hi[1] += t.y;
        } else if constexpr (std::is_same_v<T, Ball>) {
          r.center[0] += t.x; r.center[1] += t.y;
        } else if constexpr (std::is_same_v<T, Ellipse> || std::is_same_v<T, ParabolicCap>) {
          r.center += t;
        } else if constexpr (std::is_same_v<T, FourierBody>) {
          if (r.a.empty()) { r.a.push_back(0); r.b.push_back(0); }
          r.a[0] += t.x; r.b[0] += t.y;
        } else if constexpr (std::is_same_v<T, SupportTable>) {
          for (size_t i = 0; i < r.dirs.size(); ++i) r.vals[i] += dot(to_vec2(r.dirs[i]), t);
          r.planar = build_planar_table(r.dirs, r.vals);
        } else {
          double tu = dot(t, r.frame.u2()), tw = dot(t, r.frame.w2());
          for (size_t j = 0; j < r.grid.size(); ++j) { r.f[j] += tu; r.g[j] -= tu; }
          if (tw != 0) {
            if (r.grid.kind == GridKind::Cosine) {
              r.grid = Grid::cosine(r.grid.lo() + tw, r.grid.hi() + tw, static_cast<int>(r.grid.size()));
            } else {
              for (auto& x : r.grid.x) x += tw;
            }
          }
        }
      },
      out.repr);
  return out;
}

/// Homothety x -> s x with s > 0.
inline ConvexBody dilate(const ConvexBody& body, double s) {
  if (!(s > 0)) fail(ErrorKind::NonpositiveScale, "dilation factor must be positive");
  ConvexBody out = body;
  std::visit(
      [&](auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          for (auto& v : r.vertices) v = v * s;
        } else if constexpr (std::is_same_v<T, Box>) {
          r.lo = scaled(r.lo, s); r.hi = scaled(r.hi, s);
        } else if constexpr (std::is_same_v<T, Ball>) {
          r.center = scaled(r.center, s); r.radius *= s;
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          r.center = r.center * s; r.a *= s; r.b *= s;
        } else if constexpr (std::is_same_v<T, ParabolicCap>) {
          r.center = r.center * s; r.half_width *= s; r.depth *= s; r.top *= s; r.curvature /= s;
        } else if constexpr (std::is_same_v<T, FourierBody>) {
          r.c0 *= s;
          for (auto& v : r.a) v *= s;
          for (auto& v : r.b) v *= s;
        } else if constexpr (std::is_same_v<T, SupportTable>) {
          for (auto& v : r.vals) v *= s;
          if (r.dim == 2) r.planar = build_planar_table(r.dirs, r.vals);
        } else {
          for (auto& v : r.f) v *= s;
          for (auto& v : r.g) v *= s;
          if (r.grid.kind == GridKind::Cosine) {
            r.grid = Grid::cosine(r.grid.lo() * s, r.grid.hi() * s, static_cast<int>(r.grid.size()));
          } else {
            for (auto& x : r.grid.x) x *= s;
            for (auto& w : r.grid.w) w *= s;
          }
        }
      },
      out.repr);
  return out;
}

/// Reflection about u-perp, x -> x - 2 <x,u> u (an involution).
inline ConvexBody reflect(const ConvexBody& body, Vec2 u, int n = 4096) {
  if (body.dim != 2) fail(ErrorKind::Unsupported, "reflection is planar");
  if (std::fabs(norm(u) - 1) > 1e-12) fail(ErrorKind::InvalidArgument, "direction must be a unit vector");
  auto R = [&](Vec2 x) { return x - u * (2 * dot(x, u)); };
  bool axis_x = std::fabs(std::fabs(u.x) - 1) == 0, axis_y = std::fabs(std::fabs(u.y) - 1) == 0;
  ConvexBody out = body;
  bool via_table = false;
  std::visit(
      [&](auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Polygon>) {
          std::vector<Vec2> v;
          for (auto p : r.vertices) v.push_back(R(p));
          r.vertices = convex_hull(v);
        } else if constexpr (std::is_same_v<T, Box>) {
          if (axis_x) { double lo = r.lo[0]; r.lo[0] = -r.hi[0]; r.hi[0] = -lo; }
          else if (axis_y) { double lo = r.lo[1]; r.lo[1] = -r.hi[1]; r.hi[1] = -lo; }
          else via_table = true;
        } else if constexpr (std::is_same_v<T, Ball>) {
          Vec2 c = R({r.center[0], r.center[1]});
          r.center = {c.x, c.y};
        } else if constexpr (std::is_same_v<T, Ellipse>) {
          r.center = R(r.center);
          r.angle = std::atan2(R(from_angle(r.angle)).y, R(from_angle(r.angle)).x);
        } else if constexpr (std::is_same_v<T, ParabolicCap>) {
          if (axis_y) { r.center = R(r.center); r.orientation = -r.orientation; }
          else if (axis_x) { r.center = R(r.center); }
          else via_table = true;
        } else if constexpr (std::is_same_v<T, FourierBody>) {
          double beta = std::atan2(u.y, u.x) + kPi / 2;
          for (size_t k = 1; k <= r.a.size(); ++k) {
            double c = std::cos(2 * k * beta), s = std::sin(2 * k * beta);
            double a = r.a[k - 1], b = r.b[k - 1];
            r.a[k - 1] = a * c + b * s;
            r.b[k - 1] = a * s - b * c;
          }
        } else if constexpr (std::is_same_v<T, SupportTable>) {
          for (auto& d : r.dirs) d = to_vecn(R(to_vec2(d)));
          r.planar = build_planar_table(r.dirs, r.vals);
        } else {
          Vec2 fu = r.frame.u2();
          if (std::fabs(std::fabs(dot(fu, u)) - 1) < 1e-15) std::swap(r.f, r.g);
          else via_table = true;
        }
      },
      out.repr);
  if (!via_table) return out;
  std::vector<Vec2> v;
  for (auto p : to_polygon(body, n)) v.push_back(R(p));
  return polygon_body(v);
}

}  // namespace steinerlab
