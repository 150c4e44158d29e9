#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>

#include "steinerlab/steinerlab.hpp"

using namespace steinerlab;

namespace {
ConvexBody round_trip(const ConvexBody& b) { return body_from_json(json::parse(to_json(b).dump())); }
}  // namespace

TEST(Json, PolygonRoundTripIsBitExact) {
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    ConvexBody p = random_polygon(rng);
    ConvexBody q = round_trip(p);
    const auto& a = p.as<Polygon>().vertices;
    const auto& b = q.as<Polygon>().vertices;
    ASSERT_EQ(a.size(), b.size());
    for (size_t k = 0; k < a.size(); ++k) {
      EXPECT_EQ(a[k].x, b[k].x);
      EXPECT_EQ(a[k].y, b[k].y);
    }
  }
}

TEST(Json, AllFormsRoundTrip) {
  std::vector<ConvexBody> bodies = {unit_square(),
                                    unit_disc(),
                                    make_ellipse({0.1, 0.2}, 1.5, 0.5, 0.3),
                                    parabolic_k3(),
                                    random_body(5, "smooth"),
                                    body_from_support_samples(sample_support(unit_diamond(), 64)),
                                    as_body(graph_decompose(unit_disc(), Frame::planar({0, 1}, 65)))};
  for (const auto& b : bodies) {
    ConvexBody c = round_trip(b);
    EXPECT_EQ(to_json(b).dump(), to_json(c).dump());
    for (auto d : direction_grid(32)) EXPECT_EQ(support(b, d), support(c, d));
  }
}

TEST(Json, FlagsSurvive) {
  BodyFlags flags;
  Slab s = lp_chord_combine(unit_square(), unit_diamond(), PMeanSpec{2, 1, 1}, Frame::planar({0, 1}, 129), &flags);
  ConvexBody b = as_body(s);
  b.flags = flags;
  EXPECT_TRUE(round_trip(b).flags.concavity_failed);
}

TEST(Json, MalformedInputIsRejected) {
  for (const char* text : {R"({"dim": 2})", R"({"dim": 2, "repr": {"triangle": []}})", R"({"dim": 4, "repr": {"disc": {"c": [0,0], "r": 1}}})",
                           R"({"dim": 2, "repr": {"polygon": [[0, 0], [1, "x"], [0, 1]]}})",
                           R"({"dim": 2, "repr": {"disc": {"c": [0, 0]}}})"}) {
    try {
      body_from_json(json::parse(text));
      ADD_FAILURE() << text;
    } catch (const GeometryError& e) {
      EXPECT_EQ(e.kind(), ErrorKind::InvalidArgument) << text;
    }
  }
  EXPECT_THROW(read_body_file("/nonexistent/body.json"), GeometryError);
}

TEST(Svg, DeterministicAndWellFormed) {
  std::vector<std::pair<std::string, ConvexBody>> bodies = {{"square", unit_square()}, {"disc", unit_disc()}};
  std::string a = render_svg(bodies), b = render_svg(bodies);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("<svg xmlns=\"http://www.w3.org/2000/svg\"", 0), 0u);
  EXPECT_NE(a.find("</svg>"), std::string::npos);
  EXPECT_NE(a.find(">square</text>"), std::string::npos);
  EXPECT_EQ(a.find("-0.000"), std::string::npos);
  // Bodies are 2x2 and 2x2 plus a 10% margin: viewBox width 480, fixed height.
  EXPECT_NE(a.find("viewBox=\"0 0 480.000 "), std::string::npos);
}

TEST(Svg, SpatialBodiesAreRejected) {
  try {
    render_svg({{"box", make_box({-1, -1, -1}, {1, 1, 1})}});
    FAIL();
  } catch (const GeometryError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Render3DUnsupported);
  }
}

TEST(Files, WriteAndReadBack) {
  auto path = std::filesystem::temp_directory_path() / "steinerlab-io-test.json";
  write_body_file(path.string(), parabolic_k3());
  ConvexBody b = read_body_file(path.string());
  EXPECT_NEAR(volume(b), 10.0 / 3.0, 1e-12);
  std::filesystem::remove(path);
}
