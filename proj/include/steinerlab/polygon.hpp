#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "steinerlab/errors.hpp"
#include "steinerlab/vec.hpp"

namespace steinerlab {

/// Largest coordinate magnitude, used to scale predicate tolerances.
inline double coordinate_scale(const std::vector<Vec2>& pts) {
  double s = 0;
  for (auto p : pts) s = std::max({s, std::fabs(p.x), std::fabs(p.y)});
  return std::max(s, 1e-300);
}

/// Convex hull by the monotone chain; returns counterclockwise vertices in
/// strictly convex position (collinear points removed), starting from the
/// lowest-then-leftmost point.  Degenerate inputs yield 1 or 2 points.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts, double eps = 1e-12) {
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  double tol = eps * coordinate_scale(pts) * coordinate_scale(pts);
  std::vector<Vec2> h(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= tol) --k;
    h[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= tol) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) return h;
  // Rotate so that the lowest (then leftmost) vertex comes first.
  auto lowest = std::min_element(h.begin(), h.end(), [](Vec2 a, Vec2 b) { return a.y < b.y || (a.y == b.y && a.x < b.x); });
  std::rotate(h.begin(), lowest, h.end());
  return h;
}

/// Signed area by the shoelace formula (positive for counterclockwise order).
inline double polygon_area(const std::vector<Vec2>& v) {
  if (v.size() < 3) return 0.0;
  // Shift by the first vertex to limit cancellation.
  double s = 0;
  Vec2 o = v[0];
  for (size_t i = 1; i + 1 < v.size(); ++i) s += cross(v[i] - o, v[i + 1] - o);
  return 0.5 * s;
}

inline Vec2 polygon_centroid(const std::vector<Vec2>& v) {
  if (v.size() < 3) {
    Vec2 c;
    for (auto p : v) c += p;
    return c / static_cast<double>(v.size());
  }
  double a = 0;
  Vec2 c;
  Vec2 o = v[0];
  for (size_t i = 1; i + 1 < v.size(); ++i) {
    double t = cross(v[i] - o, v[i + 1] - o);
    a += t;
    c += (v[i] + v[i + 1] - o * 2.0) * t;
  }
  return o + c / (3.0 * a);
}

/// max <x, d> over the vertices (d need not be normalized).
inline double polygon_support(const std::vector<Vec2>& v, Vec2 d) {
  double m = -INFINITY;
  for (auto p : v) m = std::max(m, dot(p, d));
  return m;
}

/// True if the vertices are counterclockwise and strictly convex.
inline bool is_strictly_convex_ccw(const std::vector<Vec2>& v, double eps = 1e-12) {
  size_t n = v.size();
  if (n < 3) return false;
  double tol = eps * coordinate_scale(v) * coordinate_scale(v);
  double turn = 0;
  for (size_t i = 0; i < n; ++i) {
    Vec2 a = v[i], b = v[(i + 1) % n], c = v[(i + 2) % n];
    if (cross(b - a, c - b) <= tol) return false;
    turn += std::atan2(cross(b - a, c - b), dot(b - a, c - b));
  }
  return std::fabs(turn - 2 * kPi) < 1e-6;
}

/// Minkowski sum of two convex polygons by merging edge sequences.  Inputs
/// may be degenerate (a point or a segment).
inline std::vector<Vec2> minkowski_sum_polygons(std::vector<Vec2> a, std::vector<Vec2> b) {
  if (a.empty() || b.empty()) return {};
  if (a.size() < 3 || b.size() < 3) {
    std::vector<Vec2> s;
    for (auto p : a)
      for (auto q : b) s.push_back(p + q);
    return convex_hull(s);
  }
  auto start = [](std::vector<Vec2>& v) {
    auto it = std::min_element(v.begin(), v.end(), [](Vec2 p, Vec2 q) { return p.y < q.y || (p.y == q.y && p.x < q.x); });
    std::rotate(v.begin(), it, v.end());
  };
  start(a);
  start(b);
  size_t n = a.size(), m = b.size(), i = 0, j = 0;
  std::vector<Vec2> out;
  out.reserve(n + m);
  while (i < n || j < m) {
    out.push_back(a[i % n] + b[j % m]);
    Vec2 ea = a[(i + 1) % n] - a[i % n];
    Vec2 eb = b[(j + 1) % m] - b[j % m];
    double c = cross(ea, eb);
    if (j >= m || (i < n && c > 0)) ++i;
    else if (i >= n || c < 0) ++j;
    else { ++i; ++j; }
  }
  return convex_hull(out);
}

/// Result of a half-plane intersection: polygon vertices plus, for every
/// vertex, the index of the constraint whose boundary line follows it.
struct HalfplanePolygon {
  std::vector<Vec2> vertices;
  std::vector<size_t> next_line;   ///< vertex k lies on lines next_line[k-1] and next_line[k]
};

/// Intersection of {x : <x, d_i> <= v_i}; `dirs` must be sorted by angle in
/// [0, 2pi).  Throws InfeasibleHalfplanes for empty or unbounded results.
inline HalfplanePolygon halfplane_intersection(const std::vector<Vec2>& dirs, const std::vector<double>& vals) {
  size_t n = dirs.size();
  if (n < 3) fail(ErrorKind::InfeasibleHalfplanes, "need at least three half-planes");
  double scale = 0;
  for (double v : vals) scale = std::max(scale, std::fabs(v));
  scale = std::max(scale, 1e-300);
  // Keep the tightest of (numerically) parallel constraints.
  std::vector<size_t> idx;
  for (size_t i = 0; i < n; ++i) {
    if (!idx.empty()) {
      Vec2 p = dirs[idx.back()];
      if (cross(p, dirs[i]) <= 1e-15 && dot(p, dirs[i]) > 0) {
        if (vals[i] < vals[idx.back()]) idx.back() = i;
        continue;
      }
    }
    idx.push_back(i);
  }
  if (idx.size() > 1) {
    Vec2 p = dirs[idx.back()], q = dirs[idx.front()];
    if (cross(p, q) <= 1e-15 && dot(p, q) > 0) {
      if (vals[idx.back()] < vals[idx.front()]) idx.front() = idx.back();
      idx.pop_back();
    }
  }
  auto meet = [&](size_t i, size_t j) {
    Vec2 a = dirs[i], b = dirs[j];
    double det = cross(a, b);
    return Vec2{(vals[i] * b.y - a.y * vals[j]) / det, (a.x * vals[j] - vals[i] * b.x) / det};
  };
  // Cyclic elimination: line k is redundant when its edge between the two
  // surviving neighbours has nonpositive length (equivalently, their apex
  // satisfies it).  Testing the edge computed from the same vertices that
  // are emitted keeps the output convex when neighbours are nearly parallel
  // and the apex test is ill-conditioned.  Each removal re-examines the
  // neighbours, so the pass is linear up to the removal count.
  double eps = 1e-14 * scale;
  size_t r = idx.size();
  if (r < 3) fail(ErrorKind::InfeasibleHalfplanes, "need at least three distinct normals");
  for (size_t k = 0; k < r; ++k)
    if (cross(dirs[idx[k]], dirs[idx[(k + 1) % r]]) <= 0)
      fail(ErrorKind::InfeasibleHalfplanes, "constraint normals leave a gap of at least pi");
  std::vector<size_t> prv(r), nxt(r);
  std::vector<char> alive(r, 1);
  for (size_t k = 0; k < r; ++k) prv[k] = (k + r - 1) % r, nxt[k] = (k + 1) % r;
  size_t live = r;
  auto redundant = [&](size_t k) {
    size_t i = idx[prv[k]], j = idx[nxt[k]];
    if (cross(dirs[i], dirs[j]) <= 0) return false;
    Vec2 d = dirs[idx[k]], t{-d.y, d.x};
    return dot(t, meet(idx[k], j) - meet(i, idx[k])) <= eps;
  };
  std::vector<size_t> work(r);
  for (size_t k = 0; k < r; ++k) work[k] = r - 1 - k;
  while (!work.empty() && live > 3) {
    size_t k = work.back();
    work.pop_back();
    if (!alive[k] || !redundant(k)) continue;
    alive[k] = 0;
    --live;
    nxt[prv[k]] = nxt[k];
    prv[nxt[k]] = prv[k];
    work.push_back(nxt[k]);
    work.push_back(prv[k]);
  }
  std::vector<size_t> dq;
  size_t start = 0;
  while (!alive[start]) ++start;
  for (size_t k = start;;) {
    dq.push_back(idx[k]);
    k = nxt[k];
    if (k == start) break;
  }
  HalfplanePolygon out;
  size_t m = dq.size();
  for (size_t k = 0; k < m; ++k) {
    size_t i = dq[k], j = dq[(k + 1) % m];
    if (cross(dirs[i], dirs[j]) <= 0) fail(ErrorKind::InfeasibleHalfplanes, "unbounded or empty intersection");
    out.vertices.push_back(meet(i, j));
    out.next_line.push_back(j);
  }
  if (polygon_area(out.vertices) <= 0) fail(ErrorKind::InfeasibleHalfplanes, "empty intersection");
  // Feasibility: every constraint must hold on the polygon (linear sweep).
  size_t k = 0;
  for (size_t t = 1; t < m; ++t)
    if (dot(out.vertices[t], dirs[idx[0]]) > dot(out.vertices[k], dirs[idx[0]])) k = t;
  for (size_t i : idx) {
    Vec2 d = dirs[i];
    for (size_t step = 0; step < m; ++step) {
      size_t nk = (k + 1) % m;
      if (dot(out.vertices[nk], d) >= dot(out.vertices[k], d)) k = nk; else break;
    }
    double best = dot(out.vertices[k], d);
    best = std::max(best, dot(out.vertices[(k + m - 1) % m], d));
    if (best > vals[i] + 1e-9 * scale) fail(ErrorKind::InfeasibleHalfplanes, "inconsistent half-planes");
  }
  return out;
}

}  // namespace steinerlab
