#pragma once

#include <algorithm>
#include <array>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "steinerlab/geometry.hpp"
#include "steinerlab/graph.hpp"
#include "steinerlab/parallel.hpp"

namespace steinerlab {

/// Parameters of a_1 o_p K1 [+]_p b o_p K2.
struct FiberSpec {
  double p = 1.0;
  double a = 1.0;
  double b = 1.0;
  Frame frame;
};

struct FiberOptions {
  int directions = 1024;        ///< uniform base grid (power of two)
  double refine_tol = 1e-8;     ///< insert mid-directions while the outer-polygon gap exceeds tol * scale
  int max_directions = 1 << 15; ///< cap on the refined table size
  int prescan = 64;             ///< coarse scan points for the inner minimization
  double arg_tol = 1e-10;       ///< golden-section tolerance on the argument
};

/// Golden-section minimization of a unimodal function on [lo, hi].
template <class Fn>
double golden_min(const Fn& fn, double lo, double hi, double tol, double* argmin = nullptr) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - r * (hi - lo), d = lo + r * (hi - lo);
  double fc = fn(c), fd = fn(d);
  while (hi - lo > tol) {
    if (fc <= fd) {
      hi = d; d = c; fd = fc;
      c = hi - r * (hi - lo); fc = fn(c);
    } else {
      lo = c; c = d; fc = fd;
      d = lo + r * (hi - lo); fd = fn(d);
    }
  }
  double x = 0.5 * (lo + hi), fx = fn(x);
  double best = std::min({fx, fc, fd});
  if (argmin) *argmin = best == fx ? x : (best == fc ? c : d);
  return best;
}

/// Coarse scan followed by golden refinement around the best scan point.
template <class Fn>
double scan_min(const Fn& fn, double lo, double hi, int scan, double tol, double* argmin = nullptr) {
  if (!(hi > lo)) {
    if (argmin) *argmin = lo;
    return fn(lo);
  }
  scan = std::max(scan, 3);
  double step = (hi - lo) / (scan - 1), best = INFINITY;
  int k = 0;
  for (int i = 0; i < scan; ++i) {
    double v = fn(lo + step * i);
    if (v < best) { best = v; k = i; }
  }
  double a = lo + step * std::max(k - 1, 0), b = lo + step * std::min(k + 1, scan - 1);
  // Brent's parabolic/golden hybrid on the bracketing scan cell.  Boost caps
  // its argument precision at sqrt(machine eps), which is too coarse at kinks
  // (polygonal inputs), so finish with golden section down to tol.
  std::uintmax_t iters = 200;
  auto [x, v] = boost::math::tools::brent_find_minima(fn, a, b, std::numeric_limits<double>::digits / 2, iters);
  double tol_abs = tol * std::max(1.0, hi - lo);
  double w = 4e-8 * std::max(1.0, std::fabs(x));
  if (w > tol_abs) {
    double xp;
    double vp = golden_min(fn, std::max(a, x - w), std::min(b, x + w), tol_abs, &xp);
    if (vp < v) {
      v = vp;
      x = xp;
    }
  }
  if (best < v) {
    x = lo + step * k;
    v = best;
  }
  if (argmin) *argmin = x;
  return v;
}

/// Fiber convolute inf_{y1 + y2 = y} h1p(x', y1) + h2p(x', y2) over the
/// bracket y1 in [lo, hi]; the bracket is widened while the minimizer sits on
/// its boundary.
template <class H1, class H2>
double fiber_convolute(const H1& h1p, const H2& h2p, double xfixed, double y, double lo, double hi, int prescan = 64,
                       double tol = 1e-10, double* argmin = nullptr) {
  auto obj = [&](double y1) { return h1p(xfixed, y1) + h2p(xfixed, y - y1); };
  double x = 0, v = 0;
  for (int widen = 0; widen < 8; ++widen) {
    v = scan_min(obj, lo, hi, prescan, tol, &x);
    double w = hi - lo, edge = 1e-6 * std::max(w, 1e-300);
    if (x - lo > edge && hi - x > edge) break;
    lo -= w;
    hi += w;
  }
  if (argmin) *argmin = x;
  return v;
}

/// Two-dimensional split variable: grid scan plus coordinate descent.
template <class Fn>
double minimize_2d(const Fn& fn, std::array<double, 2> lo, std::array<double, 2> hi, int scan, double tol) {
  std::array<double, 2> best{lo[0], lo[1]};
  double bv = INFINITY;
  for (int i = 0; i < scan; ++i)
    for (int j = 0; j < scan; ++j) {
      std::array<double, 2> z{lo[0] + (hi[0] - lo[0]) * i / (scan - 1), lo[1] + (hi[1] - lo[1]) * j / (scan - 1)};
      double v = fn(z);
      if (v < bv) { bv = v; best = z; }
    }
  double h0 = (hi[0] - lo[0]) / (scan - 1), h1 = (hi[1] - lo[1]) / (scan - 1);
  for (int sweep = 0; sweep < 60; ++sweep) {
    double before = bv;
    for (int axis = 0; axis < 2; ++axis) {
      double h = axis == 0 ? h0 : h1;
      auto line = [&](double t) { auto z = best; z[axis] = t; return fn(z); };
      double x;
      double v = golden_min(line, best[axis] - h, best[axis] + h, tol, &x);
      if (v < bv) { bv = v; best[axis] = x; }
    }
    if (before - bv <= tol * std::max(1.0, std::fabs(bv))) break;
  }
  return bv;
}

/// Sampled support values of a planar body on a uniform direction grid.
struct SupportSamples {
  std::vector<Vec2> dirs;
  std::vector<double> vals;
};

inline SupportSamples sample_support(const ConvexBody& body, int n = 1024) {
  SupportSamples s;
  s.dirs = direction_grid(n);
  for (auto d : s.dirs) s.vals.push_back(support(body, d));
  return s;
}

/// Polygon {x : <x, d_i> <= v_i for all i}.
inline ConvexBody body_from_support_samples(const SupportSamples& s) {
  std::vector<VecN> dirs;
  for (auto d : s.dirs) dirs.push_back(to_vecn(d));
  ConvexBody t = make_support_table(dirs, s.vals);
  return polygon_body(t.as<SupportTable>().planar->hull.vertices);
}

/// Largest local violation of sublinearity over consecutive direction triples
/// (h_i <= alpha h_{i-1} + beta h_{i+1} whenever d_i = alpha d_{i-1} + beta d_{i+1}).
inline double sublinearity_violation(const SupportTable& t) {
  if (!t.planar) return 0;
  const auto& d = t.planar->dirs;
  const auto& h = t.planar->vals;
  size_t n = d.size();
  double worst = 0;
  for (size_t i = 0; i < n; ++i) {
    size_t a = (i + n - 1) % n, b = (i + 1) % n;
    double den = cross(d[a], d[b]);
    if (den <= 1e-15) continue;
    double alpha = cross(d[i], d[b]) / den, beta = cross(d[a], d[i]) / den;
    if (alpha < 0 || beta < 0) continue;
    worst = std::max(worst, h[i] - (alpha * h[a] + beta * h[b]));
  }
  return worst;
}

namespace detail {

/// Adaptive planar tabulation: start from a uniform grid and bisect angular
/// intervals while the vertex of the two bounding lines overshoots the
/// support function at the mid-direction by more than tol * scale.
template <class H>
void tabulate_adaptive(const H& h, const FiberOptions& opt, std::vector<VecN>& dirs, std::vector<double>& vals) {
  int n = opt.directions;
  std::vector<double> base(n);
  parallel_for(static_cast<size_t>(n), [&](size_t j) { base[j] = h(from_angle(2 * kPi * double(j) / n)); });
  double scale = 0;
  for (double v : base) scale = std::max(scale, std::fabs(v));
  double tol = opt.refine_tol * std::max(scale, 1e-300);
  long budget = std::max(0L, static_cast<long>(opt.max_directions) - n);
  std::function<void(double, double, double, double, int)> refine = [&](double ta, double va, double tb, double vb,
                                                                          int depth) {
    if (budget <= 0 || depth >= 40) return;
    Vec2 da = from_angle(ta), db = from_angle(tb);
    double det = cross(da, db);
    if (det <= 0) return;
    Vec2 c{(va * db.y - da.y * vb) / det, (da.x * vb - va * db.x) / det};
    double tm = 0.5 * (ta + tb);
    Vec2 dm = from_angle(tm);
    double vm = h(dm);
    if (dot(c, dm) - vm <= tol) return;
    --budget;
    refine(ta, va, tm, vm, depth + 1);
    dirs.push_back(to_vecn(dm));
    vals.push_back(vm);
    refine(tm, vm, tb, vb, depth + 1);
  };
  for (int j = 0; j < n; ++j) {
    dirs.push_back(to_vecn(from_angle(2 * kPi * j / n)));
    vals.push_back(base[j]);
    if (opt.refine_tol > 0) refine(2 * kPi * j / n, base[j], 2 * kPi * (j + 1) / n, base[(j + 1) % n], 0);
  }
}

inline double coord(const VecN& x, const VecN& e) { return dot(x, e); }

}  // namespace detail

/// Support of the L_p fiber combination a o_p K1 [+]_p b o_p K2 at direction
/// xi: the M-component is split between the two bodies, the L-component is
/// scaled by the dilation factors a^{1/p}, b^{1/p}.
struct FiberEvaluator {
  const ConvexBody& k1;
  const ConvexBody& k2;
  FiberSpec spec;
  FiberOptions opt;
  double s1 = 1, s2 = 1;  ///< L-scalings a^{1/p}, b^{1/p}
  double r1 = 0, r2 = 0;  ///< inradii about the origin (bracket)
  double R1 = 0, R2 = 0;  ///< circumradii

  FiberEvaluator(const ConvexBody& a, const ConvexBody& b, const FiberSpec& sp, const FiberOptions& o)
      : k1(a), k2(b), spec(sp), opt(o) {
    double p = spec.p;
    s1 = spec.a == 0 ? 0.0 : std::pow(spec.a, 1.0 / p);
    s2 = spec.b == 0 ? 0.0 : std::pow(spec.b, 1.0 / p);
    r1 = 0.99 * inradius_about_origin(k1);
    r2 = 0.99 * inradius_about_origin(k2);
    R1 = circumradius(k1);
    R2 = circumradius(k2);
  }

  double powh(const ConvexBody& k, const VecN& x) const {
    double v = support(k, x);
    return std::pow(std::max(v, 0.0), spec.p);
  }

  double powh(const ConvexBody& k, Vec2 x) const {
    double v = std::max(support(k, x), 0.0);
    return spec.p == 1.0 ? v : (spec.p == 2.0 ? v * v : std::pow(v, spec.p));
  }

  /// Planar case L = span(u), M = span(w), without heap traffic.
  double planar(Vec2 xi) const {
    Vec2 u = spec.frame.u2(), w = spec.frame.w2();
    double p = spec.p, xl = dot(xi, u), xm = dot(xi, w);
    Vec2 a1 = u * (s1 * xl), a2 = u * (s2 * xl);
    auto F1 = [&](double z) { return powh(k1, a1 + w * z); };
    auto F2 = [&](double z) { return powh(k2, a2 + w * z); };
    double B;
    if (p > 0 && r1 > 0 && r2 > 0) {
      double U = std::pow(F1(0) + F2(xm), 1.0 / p);
      B = std::min(U / r1, std::fabs(xm) + U / r2) * 1.000001 + 1e-12;
    } else {
      B = R1 + R2 + norm(xi);
    }
    int scan = p >= 1 ? std::min(16, opt.prescan) : opt.prescan;
    double v;
    if (p > 0)
      v = fiber_convolute([&](double, double z) { return F1(z); }, [&](double, double y2) { return F2(y2); }, 0.0, xm, -B, B,
                          scan, opt.arg_tol);
    else
      v = scan_min([&](double z) { return F1(z) + F2(xm - z); }, -B, B, scan, opt.arg_tol);
    v = std::max(v, 0.0);
    return p == 1.0 ? v : (p == 2.0 ? std::sqrt(v) : std::pow(v, 1.0 / p));
  }

  /// For xi = xi_L + xi_M: F1(z) + F2(xi_M - z) minimized over z in M.
  double operator()(const VecN& xi) const {
    const Frame& fr = spec.frame;
    if (fr.dim() == 2 && fr.fiber_dim == 1) return planar(to_vec2(xi));
    int n = fr.dim();
    std::vector<VecN> L, M;
    if (fr.fiber_dim == 1) {
      L = {fr.u};
      M = fr.basis;
    } else {
      L = fr.basis;
      M = {fr.u};
    }
    VecN xl(n, 0.0);
    for (auto& e : L) xl = added(xl, scaled(e, dot(xi, e)));
    std::vector<double> xm;
    for (auto& e : M) xm.push_back(dot(xi, e));
    auto point = [&](const double* z, double sL) {
      VecN x = scaled(xl, sL);
      for (size_t k = 0; k < M.size(); ++k) x = added(x, scaled(M[k], z[k]));
      return x;
    };
    double p = spec.p;
    double zero[2] = {0, 0};
    auto F1 = [&](const double* z) { return powh(k1, point(z, s1)); };
    auto F2 = [&](const double* z) {
      double w[2] = {0, 0};
      for (size_t k = 0; k < M.size(); ++k) w[k] = xm[k] - z[k];
      return powh(k2, point(w, s2));
    };
    double xmn = 0;
    for (double c : xm) xmn += c * c;
    xmn = std::sqrt(xmn);
    // Bracket for |z|: the value at z = 0 bounds both terms, and h_i >= r_i |.|.
    double B;
    if (p > 0 && r1 > 0 && r2 > 0) {
      double U = std::pow(F1(zero) + F2(zero), 1.0 / p);
      B = std::min(U / r1, xmn + U / r2) * 1.000001 + 1e-12;
    } else {
      B = R1 + R2 + norm(xi);
    }
    int scan = p >= 1 ? std::min(16, opt.prescan) : opt.prescan;
    double v;
    if (M.size() == 1) {
      auto h1p = [&](double, double z) { return F1(&z); };
      auto h2p = [&](double, double y2) { return powh(k2, point(&y2, s2)); };
      if (p > 0)
        v = fiber_convolute(h1p, h2p, 0.0, xm[0], -B, B, scan, opt.arg_tol);
      else
        v = scan_min([&](double z) { return h1p(0, z) + h2p(0, xm[0] - z); }, -B, B, scan, opt.arg_tol);
    } else {
      auto obj = [&](std::array<double, 2> z) { return F1(z.data()) + F2(z.data()); };
      v = minimize_2d(obj, {-B, -B}, {B, B}, 16, opt.arg_tol);
    }
    return std::pow(std::max(v, 0.0), 1.0 / p);
  }
};

inline void check_fiber_inputs(const ConvexBody& k1, const ConvexBody& k2, const FiberSpec& spec) {
  if (spec.p == 0 || std::isnan(spec.p) || std::isinf(spec.p)) fail(ErrorKind::InvalidArgument, "fiber combination needs finite p != 0");
  if (!(spec.a >= 0 && spec.b >= 0) || spec.a + spec.b <= 0)
    fail(ErrorKind::NonpositiveScale, "fiber weights must be nonnegative and not both zero");
  if (spec.p < 0 && !(spec.a > 0 && spec.b > 0)) fail(ErrorKind::NonpositiveScale, "p < 0 needs positive weights");
  spec.frame.validate();
  if (k1.dim != spec.frame.dim() || k2.dim != spec.frame.dim()) fail(ErrorKind::InvalidArgument, "dimension mismatch");
  if (!(inradius_about_origin(k1) > 0) || !(inradius_about_origin(k2) > 0))
    fail(ErrorKind::NotABody, "fiber combination needs origin-interior bodies");
  if (spec.frame.dim() == 2) {
    // M = u-perp for fiber_dim 1.
    Vec2 m = spec.frame.w2();
    Interval a = project_onto(k1, m), b = project_onto(k2, m);
    if (!(std::min(a.hi, b.hi) > std::max(a.lo, b.lo))) fail(ErrorKind::EmptyIntersection, "shadows on M do not overlap");
  }
}

/// Support table of a o_p K1 [+]_p b o_p K2 (a, b, p from the spec).
inline ConvexBody lp_fiber_combine(const ConvexBody& k1, const ConvexBody& k2, const FiberSpec& spec,
                                   const FiberOptions& opt = {}) {
  check_fiber_inputs(k1, k2, spec);
  FiberEvaluator ev(k1, k2, spec, opt);
  std::vector<VecN> dirs;
  std::vector<double> vals;
  if (spec.frame.dim() == 2) {
    detail::tabulate_adaptive([&](Vec2 d) { return ev.planar(d); }, opt, dirs, vals);
  } else {
    dirs = sphere_grid(2 * opt.directions);
    vals.resize(dirs.size());
    parallel_for(dirs.size(), [&](size_t i) { vals[i] = ev(dirs[i]); });
  }
  ConvexBody out = make_support_table(dirs, vals);
  out.flags.unverified_convexity = spec.p < 1;
  out.flags.experimental = spec.p < 0;
  if (out.dim == 2) {
    double scale = 0;
    for (double v : vals) scale = std::max(scale, v);
    out.flags.sublinearity_failed = sublinearity_violation(out.as<SupportTable>()) > 1e-9 * std::max(scale, 1.0);
  }
  return out;
}

/// a o_p K: the L-coordinates stretched by s = a^{1/p}, i.e. the linear image
/// under T = I + (s - 1) P_L, so h(x', y) = h_K(x', s y).
inline ConvexBody fiber_dilate(const ConvexBody& k, double a, double p, const Frame& frame, int n = 4096) {
  if (!(a > 0)) fail(ErrorKind::NonpositiveScale, "fiber dilation factor must be positive");
  if (p == 0 || std::isnan(p)) fail(ErrorKind::InvalidArgument, "fiber dilation needs p != 0");
  frame.validate();
  double s = std::isinf(p) ? 1.0 : std::pow(a, 1.0 / p);
  std::vector<VecN> L = frame.fiber_dim == 1 ? std::vector<VecN>{frame.u} : frame.basis;
  auto T = [&](const VecN& x) {
    VecN y = x;
    for (auto& e : L) y = added(y, scaled(e, (s - 1.0) * dot(x, e)));
    return y;
  };
  ConvexBody out;
  if (k.dim == 2 && frame.dim() == 2) {
    Vec2 u = frame.u2();
    auto T2 = [&](Vec2 x) { return to_vec2(T(to_vecn(x))); };
    bool axis = std::fabs(u.x) == 1.0 || std::fabs(u.y) == 1.0;
    if (k.is<Polygon>()) {
      std::vector<Vec2> v;
      for (auto q : k.as<Polygon>().vertices) v.push_back(T2(q));
      out = polygon_body(v);
    } else if (k.is<Box>() && axis) {
      VecN lo = T(k.as<Box>().lo), hi = T(k.as<Box>().hi);
      out = make_box({std::min(lo[0], hi[0]), std::min(lo[1], hi[1])}, {std::max(lo[0], hi[0]), std::max(lo[1], hi[1])});
    } else if (k.is<Box>()) {
      const Box& b = k.as<Box>();
      out = polygon_body({T2({b.lo[0], b.lo[1]}), T2({b.hi[0], b.lo[1]}), T2({b.hi[0], b.hi[1]}), T2({b.lo[0], b.hi[1]})});
    } else if (k.is<Ball>()) {
      const Ball& b = k.as<Ball>();
      out = make_ellipse(T2(to_vec2(b.center)), b.radius * s, b.radius, angle_of(u));
    } else if (k.is<Ellipse>()) {
      const Ellipse& e = k.as<Ellipse>();
      Vec2 e1 = from_angle(e.angle);
      double c = std::fabs(dot(e1, u));
      if (std::fabs(c - 1.0) < 1e-14)
        out = make_ellipse(T2(e.center), e.a * s, e.b, e.angle);
      else if (c < 1e-14)
        out = make_ellipse(T2(e.center), e.a, e.b * s, e.angle);
    } else if (k.is<ParabolicCap>() && axis) {
      ParabolicCap c = k.as<ParabolicCap>();
      c.center = T2(c.center);
      if (std::fabs(u.y) == 1.0) {
        c.curvature *= s;
        c.depth *= s;
        c.top *= s;
      } else {
        c.half_width *= s;
        c.curvature /= s * s;
      }
      out = make_cap(c);
    } else if (k.is<Slab>()) {
      Slab sl = k.as<Slab>();
      if (sl.frame.same_direction(frame) || (std::fabs(std::fabs(dot(sl.frame.u2(), u)) - 1.0) < 1e-14)) {
        for (auto& v : sl.f) v *= s;
        for (auto& v : sl.g) v *= s;
        out = as_body(std::move(sl));
      } else if (std::fabs(dot(sl.frame.u2(), u)) < 1e-14) {
        for (auto& v : sl.grid.x) v *= s;
        for (auto& v : sl.grid.w) v *= s;
        out = as_body(std::move(sl));
      }
    }
  }
  bool done = false;
  std::visit([&](const auto& r) {
    using R = std::decay_t<decltype(r)>;
    if constexpr (std::is_same_v<R, Polygon>) done = !r.vertices.empty();
    else done = true;
  }, out.repr);
  if (!done && k.dim == 2 && frame.dim() == 2 && !k.is<SupportTable>()) {
    // Planar body: graphs over u-perp scale by s along u, exactly at the nodes.
    Slab sl = graph_decompose(k, Frame::planar(frame.u2(), frame.resolution));
    for (auto& v : sl.f) v *= s;
    for (auto& v : sl.g) v *= s;
    out = as_body(std::move(sl));
    done = true;
  }
  if (!done) {
    // General case: tabulate h_K(T xi) (T is symmetric).
    std::vector<VecN> dirs = k.dim == 2 ? std::vector<VecN>{} : sphere_grid(n);
    if (k.dim == 2)
      for (auto d : direction_grid(n)) dirs.push_back(to_vecn(d));
    std::vector<double> vals;
    for (auto& d : dirs) vals.push_back(support(k, T(d)));
    out = make_support_table(dirs, vals);
  }
  out.flags = k.flags;
  return out;
}

}  // namespace steinerlab
