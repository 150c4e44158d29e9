#include <gtest/gtest.h>

#include <cmath>

#include "steinerlab/steinerlab.hpp"

using namespace steinerlab;

TEST(Support, NamedBodies) {
  for (auto d : direction_grid(256)) {
    EXPECT_NEAR(support(unit_square(), d), std::fabs(d.x) + std::fabs(d.y), 1e-15);
    EXPECT_NEAR(support(unit_diamond(), d), std::max(std::fabs(d.x), std::fabs(d.y)), 1e-15);
    EXPECT_NEAR(support(unit_disc(), d), 1.0, 1e-15);
  }
}

TEST(Support, EllipseClosedForm) {
  auto e = make_ellipse({0.25, -0.5}, 2.0, 0.5, 0.0);
  for (auto d : direction_grid(128))
    EXPECT_NEAR(support(e, d), 0.25 * d.x - 0.5 * d.y + std::hypot(2.0 * d.x, 0.5 * d.y), 1e-14);
}

TEST(Support, ParabolicCapK3) {
  // K3 = {x1^2 - 1 <= x2 <= 1, |x1| <= 1}.
  auto k3 = parabolic_k3();
  EXPECT_NEAR(support(k3, Vec2{0, -1}), 1.0, 1e-14);
  EXPECT_NEAR(support(k3, Vec2{0, 1}), 1.0, 1e-14);
  EXPECT_NEAR(support(k3, Vec2{1, 0}), 1.0, 1e-14);
  // Lower boundary x2 = x1^2 - 1 has slope 2 x1: h(d) with d ~ (2x1, -1).
  Vec2 d = normalized({1.0, -1.0});
  EXPECT_NEAR(support(k3, d), (0.5 - (0.25 - 1)) / std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(volume(k3), 10.0 / 3.0, 1e-12);
}

TEST(Support, FourierRecurrenceMatchesDirectSum) {
  FourierBody fb;
  fb.c0 = 1.0;
  fb.a = {0.1, 0.05, -0.02, 0.01};
  fb.b = {-0.05, 0.03, 0.01, -0.004};
  auto body = make_fourier(fb);
  for (int i = 0; i < 360; ++i) {
    double t = 2 * kPi * i / 360;
    EXPECT_NEAR(support(body, from_angle(t)), fb.h(t), 1e-14);
  }
}

TEST(Support, PositiveHomogeneityAndSubadditivity) {
  auto e = make_ellipse({0.1, 0.2}, 1.5, 0.7, 0.3);
  Vec2 x{0.3, -1.2}, y{-0.8, 0.4};
  EXPECT_NEAR(support(e, x * 2.5), 2.5 * support(e, x), 1e-13);
  EXPECT_LE(support(e, x + y), support(e, x) + support(e, y) + 1e-14);
}

TEST(Support, TableOfPolygonIsExactAtSamples) {
  // Regular octagon: its edge normals k pi / 4 are among the 512 samples, so
  // the outer polygon of the table is the octagon itself.
  std::vector<Vec2> oct;
  for (int k = 0; k < 8; ++k) oct.push_back(from_angle(kPi / 8 + k * kPi / 4) * (1 / std::cos(kPi / 8)));
  auto poly = make_polygon(oct);
  auto s = sample_support(poly, 512);
  auto t = body_from_support_samples(s);
  for (auto d : direction_grid(512)) EXPECT_NEAR(support(t, d), support(poly, d), 1e-13);
  EXPECT_NEAR(volume(t), volume(poly), 1e-12);
}

TEST(Support, SlabSupportMatchesPolygon) {
  auto poly = make_polygon({{1, 0}, {0, 1}, {-1, 0.2}, {-0.3, -1}});
  Slab s = graph_decompose(poly, Frame::planar({0, 1}));
  auto b = as_body(s);
  for (auto d : direction_grid(256)) EXPECT_NEAR(support(b, d), support(poly, d), 1e-12);
}

TEST(Errors, NonpositiveRadiusAndDegeneratePolygon) {
  EXPECT_THROW(make_disc({0, 0}, -1.0), GeometryError);
  EXPECT_THROW(make_polygon({{0, 0}, {1, 1}, {2, 2}}), GeometryError);
}
