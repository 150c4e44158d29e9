#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "steinerlab/steinerlab.hpp"

using namespace steinerlab;

TEST(Volume, ClosedForms) {
  EXPECT_DOUBLE_EQ(volume(unit_square()), 4.0);
  EXPECT_DOUBLE_EQ(volume(unit_diamond()), 2.0);
  EXPECT_NEAR(volume(unit_disc()), kPi, 1e-14);
  EXPECT_NEAR(volume(make_ellipse({1, 2}, 2.0, 0.5, 0.7)), kPi, 1e-14);
  EXPECT_NEAR(volume(parabolic_k3()), 10.0 / 3.0, 1e-12);
  EXPECT_NEAR(volume(as_body(graph_decompose(unit_disc(), Frame::planar({0, 1})))), kPi, 1e-6);
}

TEST(AffineSurfaceArea, DiscAndPolygon) {
  for (double p : {1.0 / 3, 0.5, 1.0}) EXPECT_NEAR(asa_p(unit_disc(), p), 2 * kPi, 1e-3 * 2 * kPi);
  EXPECT_NEAR(asa_p(unit_square(), 1.0), 0.0, 1e-6);
  EXPECT_NEAR(asa_p(make_polygon({{1, 0}, {0, 1}, {-1, -0.3}}), 0.5), 0.0, 1e-6);
}

TEST(AffineSurfaceArea, EllipseIsAffineInvariantAtOne) {
  // as_1 of an ellipse with semiaxes a, b is 2 pi (ab)^{1/3}.
  double a = 2.0, b = 0.5;
  EXPECT_NEAR(asa_p(make_ellipse({0, 0}, a, b), 1.0), 2 * kPi * std::cbrt(a * b), 1e-3);
}

TEST(AffineSurfaceArea, Homogeneity) {
  auto k = make_ellipse({0.1, 0}, 1.0, 0.6, 0.3);
  for (double p : {0.5, 1.0}) {
    double ratio = asa_p(dilate(k, 1.7), p) / asa_p(k, p);
    EXPECT_NEAR(ratio, std::pow(1.7, 2.0 * (2 - p) / (2 + p)), 1e-3);
  }
}

TEST(AffineSurfaceArea, PoleAndZeroAreRejected) {
  try {
    asa_p(unit_disc(), -2.0);
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PoleAtMinusN);
  }
  EXPECT_THROW(asa_p(unit_disc(), 0.0), GeometryError);
}

TEST(Derivative, RichardsonOnKnownFunction) {
  // F(e) = (1 + e)^3: F'(0) = 3.
  auto F = [](double e) { return std::pow(1 + e, 3); };
  DerivativeEstimate d = one_sided_derivative(F, 1.0, DerivativeSchedule{});
  EXPECT_NEAR(d.value, 3.0, 1e-6);
  EXPECT_LT(d.error, 1e-6);
  EXPECT_EQ(d.quotients.size(), d.eps.size());
}

TEST(Derivative, DivergenceIsReported) {
  // F(e) = e^{0.3}: quotients grow like e^{-0.7}.
  auto F = [](double e) { return std::pow(e, 0.3); };
  try {
    one_sided_derivative(F, 0.0, DerivativeSchedule{});
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonConvergent);
  }
  DerivativeSchedule bad;
  bad.eps_list = {0.1, 0.2};
  EXPECT_THROW(one_sided_derivative(F, 0.0, bad), GeometryError);
}

TEST(MixedArea, ChordDifferenceMatchesClosedForm) {
  Frame fr = Frame::planar({0, 1});
  auto k1 = make_ellipse({0, 0.1}, 1.0, 0.8), k2 = make_ellipse({0, -0.2}, 1.0, 0.4, 0.0);
  for (double p : {0.5, 2.0}) {
    double exact = mixed_chord_surface_exact(k1, k2, p, fr);
    DerivativeEstimate d = mixed_chord_surface(k1, k2, p, fr);
    EXPECT_NEAR(d.value, exact, 1e-4 * std::fabs(exact));
  }
}

TEST(MixedArea, FiberSelfValueAtOne) {
  // S_1(K, K) = vol(K) for the fiber sum at p = 1 (K [+]_1 eK = (1+e)K).
  auto k = make_ellipse({0, 0.1}, 1.0, 0.6, 0.2);
  DerivativeEstimate d = mixed_fiber_surface(k, k, 1.0, Frame::planar({1, 0}));
  EXPECT_NEAR(d.value, volume(k), 1e-3 * volume(k));
}

TEST(MinkowskiDet, InequalityAndEquality) {
  Eigen::MatrixXd A(2, 2), B(2, 2);
  A << 2, 0.3, 0.3, 1;
  B << 1, -0.2, -0.2, 0.5;
  EXPECT_GE(minkowski_det_slack(A, B, 0.4, 0.6, 2), -1e-12);
  EXPECT_NEAR(minkowski_det_slack(A, A, 0.3, 0.7, 2), 0.0, 1e-12);
  EXPECT_TRUE(minkowski_det_check(A, B, 1, 1, 3));
  Eigen::MatrixXd N(2, 2);
  N << 1, 0, 0, -1;
  EXPECT_THROW(minkowski_det_slack(N, A, 1, 1, 2), GeometryError);
}
