#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "steinerlab/body.hpp"
#include "steinerlab/geometry.hpp"

namespace steinerlab {

using json = nlohmann::json;

namespace detail {

inline json vec_json(const VecN& v) { return json(v); }
inline json vec_json(Vec2 v) { return json::array({v.x, v.y}); }

inline VecN read_vec(const json& j, size_t dim = 0) {
  if (!j.is_array()) fail(ErrorKind::InvalidArgument, "expected a coordinate array");
  VecN v;
  for (const auto& x : j) {
    if (!x.is_number()) fail(ErrorKind::InvalidArgument, "coordinates must be numbers");
    v.push_back(x.get<double>());
  }
  if (dim && v.size() != dim) fail(ErrorKind::InvalidArgument, "coordinate array has the wrong length");
  return v;
}

inline std::vector<double> read_numbers(const json& j) { return read_vec(j); }

inline double read_number(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) fail(ErrorKind::InvalidArgument, std::string("field must be a number: ") + key);
  return j.at(key).get<double>();
}

inline const char* grid_kind_name(GridKind k) {
  return k == GridKind::Cosine ? "cosine" : (k == GridKind::Panels ? "panels" : "nodes");
}

}  // namespace detail

/// Body in the JSON interchange format {"dim": n, "repr": {<form>: ...}}.
inline json to_json(const ConvexBody& body) {
  json r;
  if (body.is<Polygon>()) {
    json pts = json::array();
    for (auto v : body.as<Polygon>().vertices) pts.push_back(detail::vec_json(v));
    r["polygon"] = pts;
  } else if (body.is<Box>()) {
    r["box"] = {{"lo", body.as<Box>().lo}, {"hi", body.as<Box>().hi}};
  } else if (body.is<Ball>()) {
    r["disc"] = {{"c", body.as<Ball>().center}, {"r", body.as<Ball>().radius}};
  } else if (body.is<Ellipse>()) {
    const auto& e = body.as<Ellipse>();
    r["ellipse"] = {{"c", detail::vec_json(e.center)}, {"a", e.a}, {"b", e.b}, {"angle", e.angle}};
  } else if (body.is<ParabolicCap>()) {
    const auto& c = body.as<ParabolicCap>();
    r["cap"] = {{"c", detail::vec_json(c.center)}, {"half_width", c.half_width}, {"curvature", c.curvature},
                {"depth", c.depth}, {"top", c.top}, {"orientation", c.orientation}};
  } else if (body.is<FourierBody>()) {
    const auto& f = body.as<FourierBody>();
    r["fourier"] = {{"c0", f.c0}, {"a", f.a}, {"b", f.b}};
  } else if (body.is<SupportTable>()) {
    const auto& t = body.as<SupportTable>();
    r["support"] = {{"dirs", t.dirs}, {"vals", t.vals}};
  } else {
    const auto& s = body.as<Slab>();
    r["slab"] = {{"u", s.frame.u},        {"w", s.frame.basis.at(0)},
                 {"grid", s.grid.x},      {"f", s.f},
                 {"g", s.g},              {"linear", s.linear},
                 {"quadrature", {{"kind", detail::grid_kind_name(s.grid.kind)}, {"weights", s.grid.w}, {"panels", s.grid.panels}}}};
  }
  json j{{"dim", body.dim}, {"repr", r}};
  json flags = json::array();
  if (body.flags.unverified_convexity) flags.push_back("unverified-convexity");
  if (body.flags.experimental) flags.push_back("experimental");
  if (body.flags.sublinearity_failed) flags.push_back("sublinearity-failed");
  if (body.flags.concavity_failed) flags.push_back("concavity-failed");
  if (!flags.empty()) j["flags"] = flags;
  return j;
}

inline ConvexBody body_from_json(const json& j) {
  if (!j.is_object() || !j.contains("repr") || !j.at("repr").is_object() || j.at("repr").size() != 1)
    fail(ErrorKind::InvalidArgument, "body JSON needs a single-form \"repr\" object");
  int dim = j.contains("dim") ? j.at("dim").get<int>() : 2;
  if (dim != 2 && dim != 3) fail(ErrorKind::InvalidArgument, "dim must be 2 or 3");
  const auto& r = j.at("repr");
  const std::string form = r.begin().key();
  const json& v = r.begin().value();
  ConvexBody b;
  try {
    if (form == "polygon") {
      if (dim != 2) fail(ErrorKind::InvalidArgument, "polygons are planar");
      std::vector<Vec2> pts;
      for (const auto& p : v) pts.push_back(to_vec2(detail::read_vec(p, 2)));
      b = make_polygon(pts);
      // Keep the stored vertex order when it is already canonical.
      if (is_strictly_convex_ccw(pts) && pts.size() == b.as<Polygon>().vertices.size()) b = ConvexBody{2, Polygon{pts}, {}};
    } else if (form == "box") {
      b = make_box(detail::read_vec(v.at("lo"), dim), detail::read_vec(v.at("hi"), dim));
    } else if (form == "disc" || form == "ball") {
      b = make_disc(detail::read_vec(v.at("c"), dim), v.at("r").get<double>());
    } else if (form == "ellipse") {
      b = make_ellipse(to_vec2(detail::read_vec(v.at("c"), 2)), v.at("a").get<double>(), v.at("b").get<double>(),
                       detail::read_number(v, "angle", 0.0));
    } else if (form == "cap") {
      ParabolicCap c;
      if (v.contains("c")) c.center = to_vec2(detail::read_vec(v.at("c"), 2));
      c.half_width = detail::read_number(v, "half_width", c.half_width);
      c.curvature = detail::read_number(v, "curvature", c.curvature);
      c.depth = detail::read_number(v, "depth", c.depth);
      c.top = detail::read_number(v, "top", c.top);
      c.orientation = detail::read_number(v, "orientation", c.orientation);
      b = make_cap(c);
    } else if (form == "fourier") {
      FourierBody f;
      f.c0 = detail::read_number(v, "c0", 1.0);
      if (v.contains("a")) f.a = detail::read_numbers(v.at("a"));
      if (v.contains("b")) f.b = detail::read_numbers(v.at("b"));
      f.a.resize(std::max(f.a.size(), f.b.size()), 0.0);
      f.b.resize(f.a.size(), 0.0);
      b = make_fourier(f);
    } else if (form == "support") {
      std::vector<VecN> dirs;
      for (const auto& d : v.at("dirs")) dirs.push_back(detail::read_vec(d, dim));
      b = make_support_table(dirs, detail::read_numbers(v.at("vals")));
    } else if (form == "slab") {
      VecN u = detail::read_vec(v.at("u"), 2);
      Frame fr = v.contains("w") ? Frame::planar(to_vec2(u), to_vec2(detail::read_vec(v.at("w"), 2)), 2049)
                                 : Frame::planar(to_vec2(u));
      std::vector<double> xs = detail::read_numbers(v.at("grid"));
      Grid grid = Grid::nodes(xs);
      if (v.contains("quadrature")) {
        const auto& q = v.at("quadrature");
        std::string kind = q.at("kind").get<std::string>();
        grid.kind = kind == "cosine" ? GridKind::Cosine : (kind == "panels" ? GridKind::Panels : GridKind::Nodes);
        grid.w = detail::read_numbers(q.at("weights"));
        grid.panels = q.at("panels").get<std::vector<int>>();
        if (grid.w.size() != xs.size()) fail(ErrorKind::InvalidArgument, "quadrature weights do not match the grid");
      }
      fr.resolution = static_cast<int>(xs.size()) | 1;
      b = make_slab(fr, std::move(grid), detail::read_numbers(v.at("f")), detail::read_numbers(v.at("g")),
                    v.value("linear", false));
    } else {
      fail(ErrorKind::InvalidArgument, "unknown body form: " + form);
    }
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("malformed body JSON: ") + e.what());
  }
  if (b.dim != dim) fail(ErrorKind::InvalidArgument, "dim does not match the body form");
  if (j.contains("flags"))
    for (const auto& f : j.at("flags")) {
      std::string s = f.get<std::string>();
      if (s == "unverified-convexity") b.flags.unverified_convexity = true;
      if (s == "experimental") b.flags.experimental = true;
      if (s == "sublinearity-failed") b.flags.sublinearity_failed = true;
      if (s == "concavity-failed") b.flags.concavity_failed = true;
    }
  return b;
}

inline ConvexBody read_body_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidArgument, "invalid JSON in " + path + ": " + e.what());
  }
  return body_from_json(j);
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
}

inline void write_body_file(const std::string& path, const ConvexBody& body) { write_text_file(path, to_json(body).dump(2) + "\n"); }

}  // namespace steinerlab
