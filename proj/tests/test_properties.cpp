// Randomized property tests over seeded corpora of polygons and smooth bodies.

#include <gtest/gtest.h>

#include <cmath>

#include "steinerlab/steinerlab.hpp"

using namespace steinerlab;

namespace {

const Frame kHorizontal = Frame::planar({1, 0});
const Frame kVertical = Frame::planar({0, 1});

ConvexBody random_kind(Rng& rng, int i) { return i % 2 ? random_smooth(rng) : random_polygon(rng); }

}  // namespace

TEST(Property, MinkowskiSumSupportIsAdditive) {
  Rng rng(101);
  for (int i = 0; i < 20; ++i) {
    ConvexBody a = random_polygon(rng), b = random_polygon(rng);
    ConvexBody s = minkowski_sum(a, b);
    for (auto d : direction_grid(64)) EXPECT_NEAR(support(s, d), support(a, d) + support(b, d), 1e-12);
    EXPECT_GE(std::sqrt(volume(s)), std::sqrt(volume(a)) + std::sqrt(volume(b)) - 1e-12);
  }
}

TEST(Property, SteinerSymmetralPreservesArea) {
  Rng rng(102);
  for (int i = 0; i < 30; ++i) {
    ConvexBody p = random_polygon(rng);
    Vec2 u = from_angle(2 * kPi * rng.uniform());
    Slab s = steiner_symmetral(p, Frame::planar(u));
    EXPECT_NEAR(volume(as_body(s)), volume(p), 1e-10);
  }
}

TEST(Property, GraphSumVolumeIsLinear) {
  Rng rng(103);
  for (int i = 0; i < 20; ++i) {
    auto [a, b] = random_polygon_pair(rng, kVertical);
    double x = rng.uniform(0.1, 2), y = rng.uniform(0.1, 2);
    double v = volume(as_body(graph_combine(a, b, x, y, kVertical)));
    EXPECT_NEAR(v, x * volume(a) + y * volume(b), 1e-9 * std::max(1.0, v));
  }
}

TEST(Property, ChordSumAtOneIsVolumeAdditive) {
  Rng rng(104);
  for (int i = 0; i < 20; ++i) {
    auto [a, b] = random_polygon_pair(rng, kVertical);
    double x = rng.uniform(0.1, 2), y = rng.uniform(0.1, 2);
    double v = volume(lp_chord_body(a, b, PMeanSpec{1, x, y}, kVertical));
    EXPECT_NEAR(v, x * volume(a) + y * volume(b), 1e-8 * v);
  }
}

TEST(Property, ChordBrunnMinkowskiBelowAndAboveOne) {
  Rng rng(105);
  for (int i = 0; i < 20; ++i) {
    auto [a, b] = random_polygon_pair(rng, kVertical);
    double t = rng.uniform(0.1, 0.9);
    for (double p : {0.5, 2.0}) {
      double v = volume(lp_chord_body(a, b, PMeanSpec{p, t, 1 - t}, kVertical));
      double rhs = t * std::pow(volume(a), p) + (1 - t) * std::pow(volume(b), p);
      if (p < 1)
        EXPECT_LE(std::pow(v, p), rhs * (1 + 1e-9));
      else
        EXPECT_GE(std::pow(v, p), rhs * (1 - 1e-9));
    }
  }
}

TEST(Property, PMeanIsMonotoneInP) {
  Rng rng(106);
  for (int i = 0; i < 200; ++i) {
    double s = rng.uniform(0.01, 5), t = rng.uniform(0.01, 5), a = rng.uniform(0.05, 0.95);
    double prev = p_mean({-INFINITY, a, 1 - a}, s, t);
    for (double p : {-3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 7.0, HUGE_VAL}) {
      double m = p_mean({p, a, 1 - a}, s, t);
      EXPECT_GE(m, prev - 1e-12);
      prev = m;
    }
  }
}

TEST(Property, FiberSumIsSublinearAndSelfSumIsAStretch) {
  Rng rng(107);
  for (int i = 0; i < 6; ++i) {
    ConvexBody a = random_kind(rng, i), b = random_kind(rng, i + 1);
    for (double p : {1.0, 2.0, 3.0}) {
      ConvexBody t = lp_fiber_combine(a, b, FiberSpec{p, 1, 1, kHorizontal});
      EXPECT_LE(sublinearity_violation(t.as<SupportTable>()), 1e-8);
      FiberEvaluator self(a, a, FiberSpec{p, 1, 1, kHorizontal}, FiberOptions{});
      for (auto d : direction_grid(32))
        EXPECT_NEAR(self(to_vecn(d)), std::pow(2.0, 1 / p) * support(a, Vec2{d.x, d.y / 2}), 1e-8);
    }
  }
}

TEST(Property, FiberSumIsMonotone) {
  Rng rng(108);
  for (int i = 0; i < 5; ++i) {
    ConvexBody a = random_smooth(rng), b = random_polygon(rng);
    ConvexBody big = dilate(a, 1.3);
    for (double p : {1.0, 2.0}) {
      FiberEvaluator small(a, b, FiberSpec{p, 1, 1, kHorizontal}, FiberOptions{});
      FiberEvaluator large(big, b, FiberSpec{p, 1, 1, kHorizontal}, FiberOptions{});
      for (auto d : direction_grid(32)) EXPECT_LE(small(to_vecn(d)), large(to_vecn(d)) + 1e-9);
    }
  }
}

TEST(Property, AsaIsRotationInvariant) {
  Rng rng(109);
  for (int i = 0; i < 5; ++i) {
    ConvexBody k = random_smooth(rng);
    const auto& fb = k.as<FourierBody>();
    // Rotating by r shifts the support angle: (a_k, b_k) rotate by k r.
    double r = rng.uniform(0, 2 * kPi);
    FourierBody rot = fb;
    for (size_t m = 0; m < fb.a.size(); ++m) {
      double c = std::cos((m + 1) * r), s = std::sin((m + 1) * r);
      rot.a[m] = fb.a[m] * c - fb.b[m] * s;
      rot.b[m] = fb.a[m] * s + fb.b[m] * c;
    }
    for (double p : {0.5, 1.0}) EXPECT_NEAR(asa_p(make_fourier(rot), p), asa_p(k, p), 1e-6 * asa_p(k, p));
  }
}

TEST(Property, MinkowskiDeterminantOnRandomPsdPairs) {
  Rng rng(110);
  for (int i = 0; i < 500; ++i) {
    int k = rng.integer(1, 4);
    Eigen::MatrixXd G(k, k), H(k, k);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < k; ++c) G(r, c) = rng.uniform(-1, 1), H(r, c) = rng.uniform(-1, 1);
    Eigen::MatrixXd A = G * G.transpose() + 0.05 * Eigen::MatrixXd::Identity(k, k);
    Eigen::MatrixXd B = H * H.transpose() + 0.05 * Eigen::MatrixXd::Identity(k, k);
    double a = rng.uniform(0.01, 2), b = rng.uniform(0.01, 2);
    int m = k + rng.integer(0, 2);
    EXPECT_GE(minkowski_det_slack(A, B, a, b, m), -1e-12);
  }
}

TEST(Property, SeededGeneratorsAreReproducible) {
  ConvexBody a = random_body(42, "polygon"), b = random_body(42, "polygon");
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  ConvexBody c = random_body(42, "smooth"), d = random_body(42, "smooth");
  EXPECT_EQ(to_json(c).dump(), to_json(d).dump());
  EXPECT_NE(derive_seed(7, 1, 0), derive_seed(7, 1, 1));
}
