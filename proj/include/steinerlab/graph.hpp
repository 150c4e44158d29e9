#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "steinerlab/geometry.hpp"

namespace steinerlab {

/// Overgraph/undergraph values at a list of projection coordinates.
struct GraphValues {
  std::vector<double> f, g;
};

namespace detail {

/// Upper and lower chains of a polygon in frame coordinates (X along w, T along u).
struct Chains {
  std::vector<double> ux, ut;  ///< upper chain, X increasing
  std::vector<double> lx, lt;  ///< lower chain, X increasing
};

inline Chains polygon_chains(const std::vector<Vec2>& verts, Vec2 u, Vec2 w) {
  size_t n = verts.size();
  std::vector<Vec2> q(n);
  for (size_t i = 0; i < n; ++i) q[i] = {dot(verts[i], w), dot(verts[i], u)};
  // (w, u) is positively oriented, so the counterclockwise order is kept.
  auto pick = [&](bool right, bool high) {
    size_t best = 0;
    for (size_t i = 1; i < n; ++i) {
      double dx = right ? q[i].x - q[best].x : q[best].x - q[i].x;
      double dy = high ? q[i].y - q[best].y : q[best].y - q[i].y;
      if (dx > 0 || (dx == 0 && dy > 0)) best = i;
    }
    return best;
  };
  Chains c;
  if (n == 1) {
    c.ux = c.lx = {q[0].x};
    c.ut = c.lt = {q[0].y};
    return c;
  }
  // Lower chain: counterclockwise from the low-left to the low-right vertex.
  for (size_t i = pick(false, false), e = pick(true, false);; i = (i + 1) % n) {
    c.lx.push_back(q[i].x);
    c.lt.push_back(q[i].y);
    if (i == e) break;
  }
  // Upper chain: counterclockwise from the high-right to the high-left vertex.
  for (size_t i = pick(true, true), e = pick(false, true);; i = (i + 1) % n) {
    c.ux.push_back(q[i].x);
    c.ut.push_back(q[i].y);
    if (i == e) break;
  }
  std::reverse(c.ux.begin(), c.ux.end());
  std::reverse(c.ut.begin(), c.ut.end());
  return c;
}

inline double chain_eval(const std::vector<double>& xs, const std::vector<double>& ts, double x, bool upper) {
  if (xs.size() == 1) return ts[0];
  if (x <= xs.front()) {
    // At a vertical edge the extreme value is wanted.
    double v = ts.front();
    for (size_t i = 1; i < xs.size() && xs[i] == xs.front(); ++i) v = upper ? std::max(v, ts[i]) : std::min(v, ts[i]);
    return v;
  }
  if (x >= xs.back()) {
    double v = ts.back();
    for (size_t i = xs.size() - 1; i-- > 0 && xs[i] == xs.back();) v = upper ? std::max(v, ts[i]) : std::min(v, ts[i]);
    return v;
  }
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  size_t i = static_cast<size_t>(it - xs.begin());
  double a = xs[i - 1], b = xs[i];
  if (b == a) return ts[i];
  double s = (x - a) / (b - a);
  if (s == 0) return ts[i - 1];
  return ts[i - 1] + s * (ts[i] - ts[i - 1]);
}

inline GraphValues polygon_graph(const std::vector<Vec2>& verts, Vec2 u, Vec2 w, const std::vector<double>& xs) {
  Chains c = polygon_chains(verts, u, w);
  GraphValues r;
  for (double x : xs) {
    r.f.push_back(chain_eval(c.ux, c.ut, x, true));
    r.g.push_back(-chain_eval(c.lx, c.lt, x, false));
  }
  return r;
}

/// Parameter interval of {t : x w + t u in cap}.
inline std::pair<double, double> cap_chord(const ParabolicCap& c, Vec2 u, Vec2 w, double x) {
  Vec2 p0 = w * x - c.center;
  double s = c.orientation;
  double X0 = p0.x, uX = u.x, Z0 = s * p0.y, uZ = s * u.y;
  double lo = -INFINITY, hi = INFINITY;
  auto linear = [&](double a, double b) {  // a + b t <= 0
    if (std::fabs(b) < 1e-300) {
      if (a > 1e-14) { lo = 1; hi = 0; }
      return;
    }
    double r = -a / b;
    if (b > 0) hi = std::min(hi, r); else lo = std::max(lo, r);
  };
  linear(X0 - c.half_width, uX);
  linear(-X0 - c.half_width, -uX);
  linear(Z0 - c.top, uZ);
  double A = c.curvature * uX * uX, B = 2 * c.curvature * X0 * uX - uZ, C = c.curvature * X0 * X0 - c.depth - Z0;
  if (A < 1e-15 * (std::fabs(B) + std::fabs(C) + 1e-300)) {
    linear(C, B);
  } else {
    double disc = B * B - 4 * A * C;
    if (disc < 0) { lo = 1; hi = 0; }
    else {
      double sq = std::sqrt(disc);
      double q = -0.5 * (B + (B >= 0 ? sq : -sq));
      double r1 = q / A, r2 = q != 0 ? C / q : -B / A;
      lo = std::max(lo, std::min(r1, r2));
      hi = std::min(hi, std::max(r1, r2));
    }
  }
  if (hi < lo) { double m = 0.5 * (lo + hi); lo = hi = m; }
  return {lo, hi};
}

inline std::pair<double, double> ellipse_chord(const Ellipse& e, Vec2 u, Vec2 w, double x) {
  Vec2 e1 = from_angle(e.angle), e2 = perp(e1);
  Vec2 p0 = w * x - e.center;
  Vec2 q0{dot(p0, e1) / e.a, dot(p0, e2) / e.b}, q1{dot(u, e1) / e.a, dot(u, e2) / e.b};
  double A = dot(q1, q1), B = dot(q0, q1), C = dot(q0, q0) - 1;
  double disc = std::max(0.0, B * B - A * C);
  double sq = std::sqrt(disc);
  return {(-B - sq) / A, (-B + sq) / A};
}

/// Boundary crossing of a smooth Fourier body along x w + t u.  The outer
/// normal n(phi) = cos(phi) w + sin(phi) u parametrizes the upper arc on
/// [0, pi] (X decreasing) and the lower arc on [pi, 2 pi] (X increasing).
inline double fourier_arc(const FourierBody& fb, Vec2 u, Vec2 w, double x, bool upper) {
  double tw = std::atan2(w.y, w.x);
  auto X = [&](double phi) { return dot(fb.point(tw + phi), w); };
  double a = upper ? 0.0 : kPi, b = upper ? kPi : 2 * kPi;
  double Xa = X(a), Xb = X(b);
  // Monotone on [a, b]; bisection safeguarded Newton.
  bool decreasing = upper;
  if (decreasing ? x >= Xa : x <= Xa) return dot(fb.point(tw + a), u);
  if (decreasing ? x <= Xb : x >= Xb) return dot(fb.point(tw + b), u);
  double lo = a, hi = b;
  double phi = a + (b - a) * (decreasing ? (Xa - x) / (Xa - Xb) : (x - Xa) / (Xb - Xa));
  for (int it = 0; it < 100; ++it) {
    double v = X(phi) - x;
    bool beyond = decreasing ? v < 0 : v > 0;
    if (beyond) hi = phi; else lo = phi;
    double dX = -fb.rho(tw + phi) * std::sin(phi);
    double next = phi - v / dX;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (std::fabs(next - phi) < 1e-15 || hi - lo < 1e-15) { phi = next; break; }
    phi = next;
  }
  return dot(fb.point(tw + phi), u);
}

}  // namespace detail

/// True for representations whose boundary is polygonal.
inline bool piecewise_linear(const ConvexBody& body) {
  if (body.is<Polygon>() || body.is<SupportTable>() || (body.is<Box>() && body.dim == 2)) return true;
  if (body.is<Slab>()) return body.as<Slab>().linear;
  return false;
}

/// Nodes where either graph of a slab changes slope (plus both endpoints).
inline std::vector<double> slab_kinks(const Slab& s) {
  const auto& x = s.grid.x;
  std::vector<double> b{x.front()};
  for (size_t j = 1; j + 1 < x.size(); ++j) {
    for (const auto* v : {&s.f, &s.g}) {
      double sl = ((*v)[j] - (*v)[j - 1]) / (x[j] - x[j - 1]);
      double sr = ((*v)[j + 1] - (*v)[j]) / (x[j + 1] - x[j]);
      if (std::fabs(sl - sr) > 1e-9 * (1 + std::fabs(sl) + std::fabs(sr))) {
        b.push_back(x[j]);
        break;
      }
    }
  }
  b.push_back(x.back());
  return b;
}

/// Projection coordinates of boundary kinks (vertices) for polygonal bodies.
inline std::vector<double> breakpoints(const ConvexBody& body, const Frame& frame) {
  std::vector<double> b;
  if (!piecewise_linear(body)) return b;
  if (body.is<Slab>() && body.as<Slab>().frame.same_direction(frame)) return slab_kinks(body.as<Slab>());
  for (auto v : to_polygon(body)) b.push_back(dot(v, frame.w2()));
  std::sort(b.begin(), b.end());
  return b;
}

/// f(x) = max{t : x w + t u in K}, g(x) = -min{...} at the given coordinates.
inline GraphValues graph_sample(const ConvexBody& body, const Frame& frame, const std::vector<double>& xs) {
  if (body.dim != 2) fail(ErrorKind::Unsupported, "graph decomposition is planar");
  Vec2 u = frame.u2(), w = frame.w2();
  GraphValues r;
  if (body.is<Slab>() && body.as<Slab>().frame.same_direction(frame)) {
    const auto& s = body.as<Slab>();
    for (double x : xs) {
      r.f.push_back(s.grid.interp(s.f, x));
      r.g.push_back(s.grid.interp(s.g, x));
    }
    return r;
  }
  if (piecewise_linear(body) || body.is<Slab>()) return detail::polygon_graph(to_polygon(body), u, w, xs);
  if (body.is<Ball>()) {
    const auto& b = body.as<Ball>();
    Vec2 c{b.center[0], b.center[1]};
    double cw = dot(c, w), cu = dot(c, u);
    for (double x : xs) {
      double d = x - cw, s = std::sqrt(std::max(0.0, (b.radius - d) * (b.radius + d)));
      r.f.push_back(cu + s);
      r.g.push_back(s - cu);
    }
    return r;
  }
  if (body.is<Ellipse>()) {
    for (double x : xs) {
      auto [lo, hi] = detail::ellipse_chord(body.as<Ellipse>(), u, w, x);
      r.f.push_back(hi);
      r.g.push_back(-lo);
    }
    return r;
  }
  if (body.is<ParabolicCap>()) {
    for (double x : xs) {
      auto [lo, hi] = detail::cap_chord(body.as<ParabolicCap>(), u, w, x);
      r.f.push_back(hi);
      r.g.push_back(-lo);
    }
    return r;
  }
  const auto& fb = body.as<FourierBody>();
  for (double x : xs) {
    r.f.push_back(detail::fourier_arc(fb, u, w, x, true));
    r.g.push_back(-detail::fourier_arc(fb, u, w, x, false));
  }
  return r;
}

/// Default projection grid for a body: breakpoint panels for polygonal bodies,
/// a cosine grid otherwise.
inline Grid body_grid(const ConvexBody& body, const Frame& frame, std::optional<Interval> domain = std::nullopt) {
  Interval I = domain ? *domain : project(body, frame);
  if (!(I.hi > I.lo)) fail(ErrorKind::EmptyProjection, "projection has empty interior");
  if (piecewise_linear(body)) return Grid::panelled(breakpoints(body, frame), I.lo, I.hi, frame.resolution);
  return Grid::cosine(I.lo, I.hi, frame.resolution | 1);
}

inline Slab slab_on(const ConvexBody& body, const Frame& frame, Grid grid, bool linear) {
  GraphValues v = graph_sample(body, frame, grid.x);
  Slab s{frame, std::move(grid), std::move(v.f), std::move(v.g), linear};
  return s;
}

inline ConvexBody as_body(Slab s) {
  return make_slab(s.frame, std::move(s.grid), std::move(s.f), std::move(s.g), s.linear);
}

/// Overgraph/undergraph decomposition over the projection onto u-perp.
inline Slab graph_decompose(const ConvexBody& body, const Frame& frame) {
  if (body.is<Slab>() && body.as<Slab>().frame.same_direction(frame)) return body.as<Slab>();
  return slab_on(body, frame, body_grid(body, frame), piecewise_linear(body));
}

/// Largest violation of discrete concavity of nodal values (0 if concave).
inline double concavity_violation(const Grid& grid, const std::vector<double>& v) {
  double worst = 0;
  for (size_t j = 1; j + 1 < grid.size(); ++j) {
    double a = grid.x[j - 1], b = grid.x[j], c = grid.x[j + 1];
    double chord = ((c - b) * v[j - 1] + (b - a) * v[j + 1]) / (c - a);
    worst = std::max(worst, chord - v[j]);
  }
  return worst;
}

inline double slab_scale(const Slab& s) {
  double m = std::max(std::fabs(s.grid.lo()), std::fabs(s.grid.hi()));
  for (size_t j = 0; j < s.grid.size(); ++j) m = std::max({m, std::fabs(s.f[j]), std::fabs(s.g[j])});
  return m;
}

/// Both graphs concave within tol (relative to the slab scale).
inline bool slab_is_convex(const Slab& s, double tol = 1e-10) {
  double t = tol * std::max(1.0, slab_scale(s));
  return concavity_violation(s.grid, s.f) <= t && concavity_violation(s.grid, s.g) <= t;
}

/// Shared grid for two bodies over a common domain: exact breakpoint panels if
/// both are polygonal, a cosine grid otherwise.
inline Grid common_grid(const ConvexBody& a, const ConvexBody& b, const Frame& frame, Interval domain,
                        const std::vector<double>& extra_breaks = {}) {
  if (piecewise_linear(a) && piecewise_linear(b)) {
    auto br = breakpoints(a, frame);
    auto b2 = breakpoints(b, frame);
    br.insert(br.end(), b2.begin(), b2.end());
    br.insert(br.end(), extra_breaks.begin(), extra_breaks.end());
    return Grid::panelled(br, domain.lo, domain.hi, frame.resolution);
  }
  return Grid::cosine(domain.lo, domain.hi, frame.resolution | 1);
}

inline void check_equal_projections(Interval p1, Interval p2, double diameter) {
  double tol = 1e-9 * std::max(diameter, 1e-300);
  if (std::fabs(p1.lo - p2.lo) > tol || std::fabs(p1.hi - p2.hi) > tol)
    fail(ErrorKind::ProjectionMismatch, "projections onto u-perp differ");
}

/// Graph combination of two slabs: (a f1 + b f2, -(a g1 + b g2)) over the
/// common projection, resampling by linear interpolation if the grids differ.
inline Slab graph_combine(const Slab& s1, const Slab& s2, double a, double b) {
  if (a < 0 || b < 0 || a + b <= 0) fail(ErrorKind::NonpositiveScale, "weights must be nonnegative, not both zero");
  if (!s1.frame.same_direction(s2.frame)) fail(ErrorKind::ProjectionMismatch, "slabs use different frames");
  double diam = std::max(slab_scale(s1), slab_scale(s2)) * 2;
  check_equal_projections({s1.grid.lo(), s1.grid.hi()}, {s2.grid.lo(), s2.grid.hi()}, diam);
  Slab out{s1.frame, s1.grid, {}, {}, s1.linear && s2.linear};
  if (!s1.grid.same_nodes(s2.grid)) {
    if (out.linear) {
      std::vector<double> xs = slab_kinks(s1), x2 = slab_kinks(s2);
      xs.insert(xs.end(), x2.begin(), x2.end());
      out.grid = Grid::panelled(xs, s1.grid.lo(), s1.grid.hi(), s1.frame.resolution);
    } else {
      out.grid = Grid::cosine(s1.grid.lo(), s1.grid.hi(), std::max(s1.grid.size(), s2.grid.size()) | 1);
    }
  }
  for (double x : out.grid.x) {
    out.f.push_back(a * s1.grid.interp(s1.f, x) + b * s2.grid.interp(s2.f, x));
    out.g.push_back(a * s1.grid.interp(s1.g, x) + b * s2.grid.interp(s2.g, x));
  }
  return out;
}

/// Graph combination of bodies sampled directly on a common grid.
inline Slab graph_combine(const ConvexBody& k1, const ConvexBody& k2, double a, double b, const Frame& frame) {
  if (a < 0 || b < 0 || a + b <= 0) fail(ErrorKind::NonpositiveScale, "weights must be nonnegative, not both zero");
  Interval p1 = project(k1, frame), p2 = project(k2, frame);
  double diam = std::max({p1.length(), p2.length(), 2 * circumradius(k1), 2 * circumradius(k2)});
  check_equal_projections(p1, p2, diam);
  Grid grid = common_grid(k1, k2, frame, p1);
  GraphValues v1 = graph_sample(k1, frame, grid.x), v2 = graph_sample(k2, frame, grid.x);
  Slab out{frame, std::move(grid), {}, {}, piecewise_linear(k1) && piecewise_linear(k2)};
  for (size_t j = 0; j < out.grid.size(); ++j) {
    out.f.push_back(a * v1.f[j] + b * v2.f[j]);
    out.g.push_back(a * v1.g[j] + b * v2.g[j]);
  }
  return out;
}

/// Graph dilation lambda <> K: both graphs scaled by lambda >= 0.
inline Slab graph_dilate(const Slab& s, double lambda) {
  if (lambda < 0) fail(ErrorKind::NonpositiveScale, "graph dilation factor must be nonnegative");
  Slab out = s;
  for (auto& v : out.f) v *= lambda;
  for (auto& v : out.g) v *= lambda;
  return out;
}

/// Steiner symmetral about u-perp: every chord recentered on u-perp.
inline Slab steiner_symmetral(const ConvexBody& body, const Frame& frame) {
  Slab s = graph_decompose(body, frame);
  for (size_t j = 0; j < s.grid.size(); ++j) {
    double h = 0.5 * (s.f[j] + s.g[j]);
    s.f[j] = h;
    s.g[j] = h;
  }
  return s;
}

inline Interval intersect(Interval a, Interval b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

/// The part of K lying over (K|u-perp) cap (other|u-perp), as a slab.
inline Slab restrict_to_common_projection(const ConvexBody& k, const ConvexBody& other, const Frame& frame) {
  Interval I = intersect(project(k, frame), project(other, frame));
  if (!(I.hi > I.lo)) fail(ErrorKind::EmptyIntersection, "projections do not overlap");
  return slab_on(k, frame, body_grid(k, frame, I), piecewise_linear(k));
}

}  // namespace steinerlab
