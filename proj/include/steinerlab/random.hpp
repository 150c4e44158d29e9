#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "steinerlab/geometry.hpp"
#include "steinerlab/graph.hpp"

namespace steinerlab {

/// SplitMix64 finalizer, used to derive independent stream seeds.
inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of trial `index` in stream `stream` under a master seed.
inline uint64_t derive_seed(uint64_t master, uint64_t stream, uint64_t index) {
  return splitmix64(splitmix64(splitmix64(master) ^ stream) ^ index);
}

/// Stable stream id for a suite name (FNV-1a).
inline uint64_t stream_id(const std::string& name) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : name) h = (h ^ c) * 1099511628211ULL;
  return h;
}

/// Deterministic generator: mt19937_64 with platform-independent variates.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(splitmix64(seed)) {}
  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) { return lo + static_cast<int>(uniform() * (hi - lo + 1)); }
  double sign() { return uniform() < 0.5 ? -1.0 : 1.0; }
  uint64_t next() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

struct RandomParams {
  int vertices = 12;        ///< polygon: number of sample points
  int harmonics = 5;        ///< smooth: highest harmonic
  double amplitude = 0.4;   ///< smooth: bound on each harmonic's share of h + h''
  double shift = 0.15;      ///< smooth: first-harmonic (translation) scale
  double margin = 0.05;     ///< smooth: lower bound for h and h + h''
  int attempts = 1000;
};

/// Hull of k uniform points in the unit disc, translated so its centroid is
/// the origin (hence origin-interior).
inline ConvexBody random_polygon(Rng& rng, const RandomParams& prm = {}) {
  for (int attempt = 0; attempt < prm.attempts; ++attempt) {
    std::vector<Vec2> pts;
    for (int i = 0; i < prm.vertices; ++i) {
      double r = std::sqrt(rng.uniform()), t = 2 * kPi * rng.uniform();
      pts.push_back({r * std::cos(t), r * std::sin(t)});
    }
    auto hull = convex_hull(pts);
    if (hull.size() < 3 || polygon_area(hull) < 1e-3) continue;
    Vec2 c = polygon_centroid(hull);
    for (auto& v : hull) v = v - c;
    return make_polygon(hull);
  }
  fail(ErrorKind::RejectionExhausted, "no nondegenerate random polygon");
}

/// Support h = c0 + sum_k a_k cos k t + b_k sin k t with c0 = 1, rejection
/// sampled until h > margin and h + h'' > margin on a 4096-point grid.
inline ConvexBody random_smooth(Rng& rng, const RandomParams& prm = {}) {
  for (int attempt = 0; attempt < prm.attempts; ++attempt) {
    FourierBody fb;
    fb.c0 = 1.0;
    fb.a.assign(prm.harmonics, 0.0);
    fb.b.assign(prm.harmonics, 0.0);
    if (prm.harmonics >= 1) {
      fb.a[0] = rng.uniform(-prm.shift, prm.shift);
      fb.b[0] = rng.uniform(-prm.shift, prm.shift);
    }
    for (int k = 2; k <= prm.harmonics; ++k) {
      double s = prm.amplitude / (k * k - 1);
      fb.a[k - 1] = rng.uniform(-s, s);
      fb.b[k - 1] = rng.uniform(-s, s);
    }
    bool ok = true;
    for (int i = 0; i < 4096 && ok; ++i) {
      double t = 2 * kPi * i / 4096;
      ok = fb.h(t) > prm.margin && fb.rho(t) > prm.margin;
    }
    if (ok) return make_fourier(fb);
  }
  fail(ErrorKind::RejectionExhausted, "no random smooth body met the curvature margin");
}

/// Random body of the named kind ("polygon" or "smooth").
inline ConvexBody random_body(uint64_t seed, const std::string& kind, const RandomParams& prm = {}) {
  Rng rng(seed);
  if (kind == "polygon") return random_polygon(rng, prm);
  if (kind == "smooth") return random_smooth(rng, prm);
  fail(ErrorKind::InvalidArgument, "unknown random body kind: " + kind);
}

/// Polygon affinely rescaled along w so that its projection is exactly
/// [-1, 1], then shifted along u so that its centroid (hence an interior
/// point) lies on the line spanned by w; the origin is then interior.
inline ConvexBody normalize_projection(const ConvexBody& poly, const Frame& frame) {
  Vec2 u = frame.u2(), w = frame.w2();
  const auto& v = poly.as<Polygon>().vertices;
  Interval I = project_onto(poly, w);
  double c = 0.5 * (I.lo + I.hi), r = 0.5 * (I.hi - I.lo);
  std::vector<Vec2> out;
  size_t imin = 0, imax = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    double x = dot(v[i], w), y = dot(v[i], u);
    out.push_back(w * ((x - c) / r) + u * y);
    if (x < dot(v[imin], w)) imin = i;
    if (x > dot(v[imax], w)) imax = i;
  }
  // Pin the extreme coordinates exactly for axis-aligned frames.
  if (w.x == 1.0 && w.y == 0.0) {
    out[imin].x = -1.0;
    out[imax].x = 1.0;
  }
  Vec2 cen = polygon_centroid(convex_hull(out));
  double cu = dot(cen, u);
  for (auto& q : out) q = q - u * cu;
  if (w.x == 1.0 && w.y == 0.0) {
    out[imin].x = -1.0;
    out[imax].x = 1.0;
  }
  return make_polygon(out);
}

/// Two random polygons with identical projections [-1, 1] onto w.
inline std::pair<ConvexBody, ConvexBody> random_polygon_pair(Rng& rng, const Frame& frame, const RandomParams& prm = {}) {
  ConvexBody a = normalize_projection(random_polygon(rng, prm), frame);
  ConvexBody b = normalize_projection(random_polygon(rng, prm), frame);
  return {a, b};
}

/// Smooth pair over a common projection: a random smooth body K1 (as a slab)
/// and K2 = K1 with its graphs raised by bumps c (1 - s^2)^3 (1 + alpha s)
/// that vanish to second order at the projection endpoints.  The bump size
/// is capped so that K2 keeps curvature at least half of K1's minimum.
inline std::pair<Slab, Slab> random_smooth_pair(Rng& rng, const Frame& frame, const RandomParams& prm = {}) {
  for (int attempt = 0; attempt < prm.attempts; ++attempt) {
    ConvexBody k1 = random_smooth(rng, prm);
    const FourierBody& fb = k1.as<FourierBody>();
    double rho_max = 0;
    for (int i = 0; i < 4096; ++i) rho_max = std::max(rho_max, fb.rho(2 * kPi * i / 4096));
    double kappa_min = 1.0 / rho_max;
    Slab s1 = graph_decompose(k1, frame);
    Slab s2 = s1;
    double c = s1.grid.center(), r = s1.grid.radius();
    for (int side = 0; side < 2; ++side) {
      double alpha = rng.uniform(-0.5, 0.5);
      // max |d^2/ds^2 of (1 - s^2)^3 (1 + alpha s)| on a fine grid
      double bmax = 0;
      for (int i = 0; i <= 2000; ++i) {
        double s = -1 + 2.0 * i / 2000, q = 1 - s * s;
        double d2 = (-6 * q * q + 24 * s * s * q) * (1 + alpha * s) + 2 * alpha * (-6 * s * q * q);
        bmax = std::max(bmax, std::fabs(d2));
      }
      double amp = rng.uniform(0.2, 1.0) * rng.sign() * 0.5 * kappa_min * r * r / bmax;
      auto& v = side == 0 ? s2.f : s2.g;
      for (size_t j = 0; j < v.size(); ++j) {
        double s = (s1.grid.x[j] - c) / r, q = 1 - s * s;
        v[j] += amp * q * q * q * (1 + alpha * s);
      }
    }
    bool ok = true;
    for (size_t j = 1; j + 1 < s2.grid.size() && ok; ++j) ok = s2.f[j] + s2.g[j] > 0;
    if (!ok || !(inradius_about_origin(as_body(s2)) > 0)) continue;
    s1.linear = s2.linear = false;
    return {s1, s2};
  }
  fail(ErrorKind::RejectionExhausted, "no admissible smooth pair");
}

}  // namespace steinerlab
