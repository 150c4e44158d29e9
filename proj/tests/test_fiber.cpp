#include <gtest/gtest.h>

#include <cmath>

#include "steinerlab/steinerlab.hpp"

using namespace steinerlab;

namespace {
const Frame kHorizontal = Frame::planar({1, 0});

double sup_error(const ConvexBody& b, double (*want)(Vec2)) {
  double worst = 0;
  for (auto d : direction_grid(1024)) worst = std::max(worst, std::fabs(support(b, d) - want(d)));
  return worst;
}
}  // namespace

TEST(Fiber, SquarePlusDiscAtOneIsStadium) {
  ConvexBody t = lp_fiber_combine(unit_square(), unit_disc(), FiberSpec{1, 1, 1, kHorizontal});
  EXPECT_LE(sup_error(t, [](Vec2 d) { return std::fabs(d.x) + std::hypot(d.x, d.y); }), 1e-4);
  EXPECT_NEAR(support(t, Vec2{1, 0}), 2.0, 1e-9);
  EXPECT_NEAR(support(t, Vec2{0, 1}), 1.0, 1e-9);
  EXPECT_NEAR(volume(t), 4 + kPi, 1e-6);
}

TEST(Fiber, SquarePlusDiscAtTwo) {
  ConvexBody t = lp_fiber_combine(unit_square(), unit_disc(), FiberSpec{2, 1, 1, kHorizontal});
  double err = sup_error(t, [](Vec2 d) {
    double x1 = std::fabs(d.x), x2 = std::fabs(d.y);
    return x2 <= x1 ? std::sqrt(2 * x1 * x1 + x2 * x2) : std::sqrt(0.5 * (x1 + x2) * (x1 + x2) + x1 * x1);
  });
  EXPECT_LE(err, 1e-3);
}

TEST(Fiber, CommutesInItsArguments) {
  auto a = make_ellipse({0.1, 0}, 1.0, 0.5, 0.4), b = make_polygon({{1, -0.2}, {0.2, 1}, {-0.8, 0.3}, {-0.1, -1}});
  for (double p : {1.0, 1.5, 3.0}) {
    FiberEvaluator e1(a, b, FiberSpec{p, 0.6, 1.3, kHorizontal}, FiberOptions{});
    FiberEvaluator e2(b, a, FiberSpec{p, 1.3, 0.6, kHorizontal}, FiberOptions{});
    for (auto d : direction_grid(64)) EXPECT_NEAR(e1(to_vecn(d)), e2(to_vecn(d)), 1e-9);
  }
}

TEST(Fiber, DilationScalesVolume) {
  // vol(a o_p K) = a^{1/p} vol(K) in the plane (fiber dimension 1).
  auto k = make_ellipse({0, 0.2}, 1.0, 0.7, 0.3);
  for (double p : {1.0, 2.0, 3.0}) {
    double v = volume(fiber_dilate(k, 2.5, p, kHorizontal));
    EXPECT_NEAR(v / volume(k), std::pow(2.5, 1 / p), 1e-6);
  }
}

TEST(Fiber, SumWithItselfIsAStretch) {
  // By convexity of h^p the inner minimum sits at the midpoint of the M
  // component: h(K [+]_p K)(x) = 2^{1/p} h_K(x_M / 2 w + x_L u).
  auto k = make_ellipse({0, 0.1}, 1.0, 0.6, 0.5);
  for (double p : {1.0, 2.0}) {
    ConvexBody t = lp_fiber_combine(k, k, FiberSpec{p, 1, 1, kHorizontal});
    for (auto d : direction_grid(256))
      EXPECT_NEAR(support(t, d), std::pow(2.0, 1 / p) * support(k, Vec2{d.x, d.y / 2}), 1e-8);
  }
  // At p = 1 that is the fiber dilate 2 o_1 K, a stretch by 2 along u.
  ConvexBody t = lp_fiber_combine(k, k, FiberSpec{1, 1, 1, kHorizontal});
  EXPECT_NEAR(volume(t), 2 * volume(k), 1e-6);
}

TEST(Fiber, RejectsInvalidExponentsAndBodies) {
  EXPECT_THROW(lp_fiber_combine(unit_square(), unit_disc(), FiberSpec{0, 1, 1, kHorizontal}), GeometryError);
  EXPECT_THROW(lp_fiber_combine(unit_square(), unit_disc(), FiberSpec{INFINITY, 1, 1, kHorizontal}), GeometryError);
  EXPECT_THROW(lp_fiber_combine(unit_square(), unit_disc(), FiberSpec{1, -1, 1, kHorizontal}), GeometryError);
  // The origin must be interior for p != 1.
  EXPECT_THROW(lp_fiber_combine(translate(unit_square(), {3, 0}), unit_disc(), FiberSpec{2, 1, 1, kHorizontal}),
               GeometryError);
}

TEST(Fiber, SupportTableIsSublinear) {
  auto a = make_ellipse({0.1, 0}, 1.0, 0.5, 0.4), b = unit_diamond();
  ConvexBody t = lp_fiber_combine(a, b, FiberSpec{2, 1, 1, kHorizontal});
  EXPECT_LE(sublinearity_violation(t.as<SupportTable>()), 1e-9);
  EXPECT_FALSE(t.flags.sublinearity_failed);
}
