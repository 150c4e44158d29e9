#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "steinerlab/graph.hpp"

namespace steinerlab {

/// Sampled chord-length function over the projection grid.
struct ChordProfile {
  Frame frame;
  Grid grid;
  std::vector<double> lengths;
  bool linear = false;
};

/// Weighted p-mean parameters; p may be +-infinity (weights then ignored).
struct PMeanSpec {
  double p = 1.0;
  double a = 1.0;
  double b = 1.0;
};

inline ChordProfile chord_profile(const ConvexBody& body, const Frame& frame) {
  Slab s = graph_decompose(body, frame);
  ChordProfile c{s.frame, s.grid, {}, s.linear};
  for (size_t j = 0; j < s.grid.size(); ++j) c.lengths.push_back(std::max(0.0, s.f[j] + s.g[j]));
  return c;
}

/// M_p^{(a,b)}(s, t) with the continuity convention at vanishing arguments.
inline double p_mean(const PMeanSpec& m, double s, double t) {
  double p = m.p;
  if (p == std::numeric_limits<double>::infinity()) return std::max(s, t);
  if (p == -std::numeric_limits<double>::infinity()) return std::min(s, t);
  if (p == 0) return std::pow(s, m.a) * std::pow(t, m.b);
  if (p < 0 && (s == 0 || t == 0)) return 0.0;
  if (p == 1) return m.a * s + m.b * t;
  return std::pow(m.a * std::pow(s, p) + m.b * std::pow(t, p), 1.0 / p);
}

inline void check_pmean(const PMeanSpec& m) {
  if (!(m.a > 0 && m.b > 0)) fail(ErrorKind::NonpositiveScale, "p-mean weights must be positive");
  if (std::isnan(m.p)) fail(ErrorKind::InvalidArgument, "p is NaN");
}

/// Symmetric slab (f = g = len/2) from chord lengths.
inline Slab symmetric_slab(const Frame& frame, Grid grid, const std::vector<double>& len, bool linear) {
  Slab s{frame, std::move(grid), {}, {}, linear};
  for (double v : len) {
    s.f.push_back(0.5 * v);
    s.g.push_back(0.5 * v);
  }
  return s;
}

/// Breakpoints where two chord functions that are linear on each panel cross.
inline std::vector<double> chord_crossings(const Grid& grid, const std::vector<double>& l1, const std::vector<double>& l2) {
  std::vector<double> out;
  for (size_t p = 0; p + 1 < grid.panels.size(); ++p) {
    size_t i = static_cast<size_t>(grid.panels[p]), j = static_cast<size_t>(grid.panels[p + 1]);
    double d0 = l1[i] - l2[i], d1 = l1[j] - l2[j];
    if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0)) out.push_back(grid.x[i] + (grid.x[j] - grid.x[i]) * d0 / (d0 - d1));
  }
  return out;
}

/// L_p chord combination a (.) K1 (+)_p b (.) K2 in direction u: symmetric about
/// u-perp over the intersection of the projections, chord = M_p^{(a,b)}(l1, l2).
inline Slab lp_chord_combine(const ConvexBody& k1, const ConvexBody& k2, const PMeanSpec& m, const Frame& frame,
                             BodyFlags* flags = nullptr) {
  check_pmean(m);
  Interval I = intersect(project(k1, frame), project(k2, frame));
  if (!(I.hi > I.lo)) fail(ErrorKind::EmptyIntersection, "projections have no common interior");
  Grid grid = common_grid(k1, k2, frame, I);
  bool pl = piecewise_linear(k1) && piecewise_linear(k2);
  auto chords = [&](const Grid& gr, const ConvexBody& k) {
    GraphValues v = graph_sample(k, frame, gr.x);
    std::vector<double> l(gr.size());
    for (size_t j = 0; j < gr.size(); ++j) l[j] = std::max(0.0, v.f[j] + v.g[j]);
    return l;
  };
  std::vector<double> l1 = chords(grid, k1), l2 = chords(grid, k2);
  if (pl && std::isinf(m.p)) {
    // min/max of linear pieces: add crossings so the result stays exact.
    auto cr = chord_crossings(grid, l1, l2);
    if (!cr.empty()) {
      grid = common_grid(k1, k2, frame, I, cr);
      l1 = chords(grid, k1);
      l2 = chords(grid, k2);
    }
  }
  std::vector<double> len(grid.size());
  for (size_t j = 0; j < grid.size(); ++j) len[j] = p_mean(m, l1[j], l2[j]);
  bool linear = pl && (m.p == 1 || std::isinf(m.p));
  Slab out = symmetric_slab(frame, std::move(grid), len, linear);
  if (flags) {
    *flags = {};
    flags->experimental = m.p <= 0;
    flags->unverified_convexity = !(m.p > 0 && m.p <= 1) && m.p != -std::numeric_limits<double>::infinity();
    flags->concavity_failed = !slab_is_convex(out);
  }
  return out;
}

/// Chord-sum result as a body carrying the convexity flags.
inline ConvexBody lp_chord_body(const ConvexBody& k1, const ConvexBody& k2, const PMeanSpec& m, const Frame& frame) {
  BodyFlags fl;
  Slab s = lp_chord_combine(k1, k2, m, frame, &fl);
  ConvexBody b = as_body(std::move(s));
  b.flags = fl;
  return b;
}

/// a (.)_{u,p} K: chords scaled by a^{1/p} and recentered on u-perp.
inline Slab chord_dilate(const ConvexBody& k, double a, double p, const Frame& frame) {
  if (!(a > 0)) fail(ErrorKind::NonpositiveScale, "chord dilation factor must be positive");
  if (p == 0 || std::isnan(p)) fail(ErrorKind::InvalidArgument, "chord dilation needs p != 0");
  ChordProfile c = chord_profile(k, frame);
  double s = std::isinf(p) ? 1.0 : std::pow(a, 1.0 / p);
  for (auto& v : c.lengths) v *= s;
  return symmetric_slab(frame, std::move(c.grid), c.lengths, c.linear);
}

}  // namespace steinerlab
