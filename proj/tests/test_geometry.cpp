#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "steinerlab/steinerlab.hpp"

using namespace steinerlab;

TEST(ConvexHull, SquareWithInteriorAndCollinearPoints) {
  std::vector<Vec2> pts = {{1, 1}, {-1, 1}, {0, 0}, {-1, -1}, {1, -1}, {0, 1}, {0.5, -0.2}};
  auto h = convex_hull(pts);
  ASSERT_EQ(h.size(), 4u);
  EXPECT_DOUBLE_EQ(polygon_area(h), 4.0);
  EXPECT_TRUE(is_strictly_convex_ccw(h));
}

TEST(Polygon, AreaCentroidSupport) {
  std::vector<Vec2> tri = {{0, 0}, {3, 0}, {0, 3}};
  EXPECT_DOUBLE_EQ(polygon_area(tri), 4.5);
  Vec2 c = polygon_centroid(tri);
  EXPECT_NEAR(c.x, 1.0, 1e-15);
  EXPECT_NEAR(c.y, 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(polygon_support(tri, normalized(Vec2{1, 1})), 3.0 / std::sqrt(2.0));
}

TEST(Polygon, MinkowskiSumOfSquareAndDiamond) {
  auto sq = unit_square().as<Polygon>().vertices, di = unit_diamond().as<Polygon>().vertices;
  auto s = minkowski_sum_polygons(sq, di);
  EXPECT_EQ(s.size(), 8u);
  // Area of Minkowski sum = |A| + |B| + 2 V(A,B) = 4 + 2 + 2 * 4.
  EXPECT_NEAR(polygon_area(s), 14.0, 1e-12);
  for (auto d : direction_grid(64))
    EXPECT_NEAR(polygon_support(s, d), polygon_support(sq, d) + polygon_support(di, d), 1e-12);
}

TEST(Halfplanes, SquareAndRedundantLines) {
  std::vector<Vec2> d = {{1, 0}, normalized({1, 1}), {0, 1}, {-1, 0}, {0, -1}};
  std::vector<double> v = {1, 5, 1, 1, 1};
  auto hp = halfplane_intersection(d, v);
  EXPECT_EQ(hp.vertices.size(), 4u);
  EXPECT_DOUBLE_EQ(polygon_area(hp.vertices), 4.0);
}

TEST(Halfplanes, EmptyAndUnboundedFail) {
  std::vector<Vec2> d = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  try {
    halfplane_intersection(d, {-1, 1, -1, 1});
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InfeasibleHalfplanes);
  }
  std::vector<Vec2> half = {{1, 0}, normalized({1, 1}), {0, 1}};
  EXPECT_THROW(halfplane_intersection(half, {1, 1, 1}), GeometryError);
}

// Dense, nearly parallel constraints around the corners of a polygon with
// values perturbed at the rounding level: the result must satisfy every
// constraint and reproduce the polygon.
TEST(Halfplanes, NearlyParallelClustersStayFeasible) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1, 1);
  auto poly = make_polygon({{1.2, 0.1}, {0.2, 0.9}, {-0.9, 0.4}, {-0.6, -0.8}, {0.7, -0.7}});
  std::vector<double> ang;
  for (int i = 0; i < 512; ++i) ang.push_back(2 * kPi * i / 512);
  const auto& v = poly.as<Polygon>().vertices;
  for (size_t k = 0; k < v.size(); ++k) {
    Vec2 e = v[(k + 1) % v.size()] - v[k];
    ang.push_back(angle_of({e.y, -e.x}));  // outer edge normals make the table exact
  }
  for (int c = 0; c < 5; ++c)
    for (int i = 0; i < 200; ++i) ang.push_back(std::fmod(1.3 * c + 3e-6 * i, 2 * kPi));
  std::sort(ang.begin(), ang.end());
  ang.erase(std::unique(ang.begin(), ang.end()), ang.end());
  std::vector<Vec2> dirs;
  std::vector<double> vals;
  for (double a : ang) {
    dirs.push_back(from_angle(a));
    vals.push_back(support(poly, dirs.back()) * (1 + 1e-13 * U(rng)));
  }
  auto hp = halfplane_intersection(dirs, vals);
  for (size_t i = 0; i < dirs.size(); ++i)
    for (auto q : hp.vertices) ASSERT_LE(dot(q, dirs[i]), vals[i] + 1e-9);
  EXPECT_NEAR(polygon_area(hp.vertices), volume(poly), 1e-9);
}

TEST(Geometry, HausdorffAndContainment) {
  auto sq = unit_square();
  auto big = dilate(sq, 2.0);
  EXPECT_NEAR(hausdorff_distance(sq, big), std::sqrt(2.0), 1e-6);
  EXPECT_TRUE(contains(big, {1.9, -1.9}));
  EXPECT_FALSE(contains(sq, {1.1, 0}));
  EXPECT_NEAR(circumradius(sq), std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(inradius_about_origin(sq), 1.0, 1e-12);
  EXPECT_TRUE(origin_interior(sq));
  EXPECT_FALSE(origin_interior(translate(sq, {2, 0})));
}

TEST(Geometry, ProjectionOfEllipse) {
  auto e = make_ellipse({0.5, 0}, 2.0, 1.0, kPi / 2);
  Interval I = project_onto(e, {1, 0});
  EXPECT_NEAR(I.lo, -0.5, 1e-12);
  EXPECT_NEAR(I.hi, 1.5, 1e-12);
}

TEST(Geometry, ReflectionPreservesArea) {
  auto p = make_polygon({{1, 0}, {0, 2}, {-1, 0.5}});
  auto r = reflect(p, normalized({1, 1}));
  EXPECT_NEAR(volume(r), volume(p), 1e-9);
}
