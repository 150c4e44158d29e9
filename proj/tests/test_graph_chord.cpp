#include <gtest/gtest.h>

#include <cmath>

#include "steinerlab/steinerlab.hpp"

using namespace steinerlab;

namespace {
const Frame kVertical = Frame::planar({0, 1});
}

TEST(Graph, RectanglesSumToBox) {
  ConvexBody r1 = rectangle(-2, 2, -1, 1), r2 = rectangle(-2, 2, -0.5, 0.5);
  ConvexBody s = as_body(graph_combine(r1, r2, 1, 1, kVertical));
  auto got = to_polygon(s);
  auto want = rectangle(-2, 2, -1.5, 1.5).as<Polygon>().vertices;
  ASSERT_EQ(got.size(), want.size());
  for (size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].x, want[i].x);
    EXPECT_EQ(got[i].y, want[i].y);
  }
}

TEST(Graph, SquarePlusDiscSupport) {
  ConvexBody s = as_body(graph_combine(unit_square(), unit_disc(), 1, 1, kVertical));
  for (auto d : direction_grid(1024)) EXPECT_NEAR(support(s, d), std::fabs(d.y) + 1.0, 1e-4);
}

TEST(Graph, SquarePlusK3Bounds) {
  Slab s = graph_combine(unit_square(), parabolic_k3(), 1, 1, kVertical);
  for (size_t j = 0; j < s.grid.size(); ++j) {
    double x = s.grid.x[j];
    EXPECT_NEAR(s.f[j], 2.0, 1e-10);
    EXPECT_NEAR(-s.g[j], x * x - 2, 1e-10);
  }
}

TEST(Graph, ProjectionMismatchIsRejected) {
  try {
    graph_combine(unit_square(), rectangle(-2, 2, -1, 1), 1, 1, kVertical);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ProjectionMismatch);
  }
}

TEST(Graph, VolumeIsLinear) {
  ConvexBody a = unit_square(), b = parabolic_k3();
  double v = volume(as_body(graph_combine(a, b, 0.3, 1.7, kVertical)));
  EXPECT_NEAR(v, 0.3 * 4.0 + 1.7 * 10.0 / 3.0, 1e-9);
}

TEST(Steiner, SymmetralPreservesAreaAndIsSymmetric) {
  auto p = make_polygon({{1, 0.3}, {0.1, 1.2}, {-1, 0.4}, {-0.2, -0.9}});
  Slab s = steiner_symmetral(p, kVertical);
  EXPECT_NEAR(volume(as_body(s)), volume(p), 1e-12);
  for (size_t j = 0; j < s.grid.size(); ++j) EXPECT_DOUBLE_EQ(s.f[j], s.g[j]);
}

TEST(PMean, SpecialValues) {
  EXPECT_DOUBLE_EQ(p_mean({1, 1, 1}, 2, 3), 5);
  EXPECT_NEAR(p_mean({0, 0.5, 0.5}, 4, 9), 6.0, 1e-14);  // s^a t^b
  EXPECT_NEAR(p_mean({0, 1, 1}, 4, 9), 36.0, 1e-12);
  EXPECT_DOUBLE_EQ(p_mean({INFINITY, 1, 1}, 2, 3), 3);
  EXPECT_DOUBLE_EQ(p_mean({-INFINITY, 1, 1}, 2, 3), 2);
  EXPECT_NEAR(p_mean({2, 1, 1}, 3, 4), 5.0, 1e-14);
  EXPECT_NEAR(p_mean({-1, 1, 1}, 2, 2), 1.0, 1e-14);
}

TEST(Chord, SquareGeometricDiscIsEllipse) {
  Slab s = lp_chord_combine(unit_square(), unit_disc(), PMeanSpec{0, 1, 1}, kVertical);
  for (size_t j = 0; j < s.grid.size(); ++j) {
    double x = s.grid.x[j];
    EXPECT_NEAR(s.f[j] + s.g[j], 4 * std::sqrt(std::max(0.0, 1 - x * x)), 1e-4);
  }
  EXPECT_NEAR(volume(as_body(s)), 2 * kPi, 1e-4);
}

TEST(Chord, SquarePlusK3) {
  Slab s = lp_chord_combine(unit_square(), parabolic_k3(), PMeanSpec{1, 1, 1}, kVertical);
  for (size_t j = 0; j < s.grid.size(); ++j) {
    double x = s.grid.x[j];
    EXPECT_NEAR(s.f[j], 2 - x * x / 2, 1e-10);
    EXPECT_NEAR(s.g[j], 2 - x * x / 2, 1e-10);
  }
}

TEST(Chord, InfiniteExponentsSelectInputs) {
  ConvexBody sq = unit_square(), disc = unit_disc();
  Slab lo = lp_chord_combine(sq, disc, PMeanSpec{-INFINITY, 1, 1}, kVertical);
  Slab hi = lp_chord_combine(sq, disc, PMeanSpec{INFINITY, 1, 1}, kVertical);
  GraphValues vd = graph_sample(disc, kVertical, lo.grid.x), vs = graph_sample(sq, kVertical, hi.grid.x);
  for (size_t j = 0; j < lo.grid.size(); ++j) EXPECT_EQ(lo.f[j] + lo.g[j], std::max(0.0, vd.f[j] + vd.g[j]));
  for (size_t j = 0; j < hi.grid.size(); ++j) EXPECT_EQ(hi.f[j] + hi.g[j], std::max(0.0, vs.f[j] + vs.g[j]));
}

TEST(Chord, DilationScalesVolume) {
  // vol(a.K (+)_p b.K) = (a + b)^{1/p} vol(K).
  auto k = make_ellipse({0, 0.1}, 1.0, 0.6, 0.2);
  for (double p : {0.5, 1.0, 2.0}) {
    double v = volume(as_body(lp_chord_combine(k, k, PMeanSpec{p, 0.7, 1.6}, kVertical)));
    EXPECT_NEAR(v / volume(k), std::pow(2.3, 1 / p), 1e-6);
  }
}

TEST(Chord, SquarePlusDiamondAtTwoIsNotConvex) {
  BodyFlags flags;
  lp_chord_combine(unit_square(), unit_diamond(), PMeanSpec{2, 1, 1}, kVertical, &flags);
  EXPECT_TRUE(flags.concavity_failed);
  for (double p : {0.5, 1.0}) {
    BodyFlags ok;
    lp_chord_combine(unit_square(), unit_diamond(), PMeanSpec{p, 1, 1}, kVertical, &ok);
    EXPECT_FALSE(ok.concavity_failed);
  }
}
