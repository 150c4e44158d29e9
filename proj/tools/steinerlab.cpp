// steinerlab: construct convex bodies, combine them, evaluate functionals,
// run the verification suites and render SVG figures.
//
// Exit codes: 0 success / pass, 1 verification failure, 2 input or
// precondition error (JSON on stderr), 3 numerical non-convergence.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "steinerlab/steinerlab.hpp"

namespace sl = steinerlab;
using sl::json;

namespace {

struct Params {
  std::string p = "1";
  double a = 1.0, b = 1.0;
  double lambda = -1;
  std::string u;
  int grid = 2049;
  uint64_t seed = 7;
  int trials = -1;
  double tol = -1;
  std::string out;
  std::string format = "json";
};

double parse_real(const std::string& s, const char* what) {
  const char* c = s.c_str();
  char* end = nullptr;
  double v = std::strtod(c, &end);
  if (end == c || *end != '\0') sl::fail(sl::ErrorKind::InvalidArgument, std::string("cannot parse ") + what + ": " + s);
  return v;
}

sl::Vec2 parse_u(const std::string& s, sl::Vec2 fallback) {
  if (s.empty()) return fallback;
  auto comma = s.find(',');
  if (comma == std::string::npos) sl::fail(sl::ErrorKind::InvalidArgument, "--u expects \"x,y\"");
  sl::Vec2 u{parse_real(s.substr(0, comma), "--u"), parse_real(s.substr(comma + 1), "--u")};
  double n = sl::norm(u);
  if (!(n > 0)) sl::fail(sl::ErrorKind::InvalidArgument, "--u must be nonzero");
  return u * (1.0 / n);
}

void emit(const Params& prm, const std::string& text) {
  if (prm.out.empty())
    std::cout << text;
  else
    sl::write_text_file(prm.out, text);
}

std::string label_of(const std::string& path) { return std::filesystem::path(path).stem().string(); }

/// CSV dump of a body: support samples for support-type bodies, graph nodes for slabs.
std::string body_csv(const sl::ConvexBody& b) {
  std::ostringstream o;
  o.precision(17);
  if (b.is<sl::Slab>()) {
    const auto& s = b.as<sl::Slab>();
    o << "x,f,g\n";
    for (size_t j = 0; j < s.grid.size(); ++j) o << s.grid.x[j] << "," << s.f[j] << "," << s.g[j] << "\n";
  } else {
    if (b.dim != 2) sl::fail(sl::ErrorKind::Unsupported, "CSV output is planar");
    o << "angle,h\n";
    for (auto d : sl::direction_grid(1024)) o << sl::angle_of(d) << "," << sl::support(b, d) << "\n";
  }
  return o.str();
}

void emit_body(const Params& prm, const sl::ConvexBody& b, const std::vector<std::pair<std::string, sl::ConvexBody>>& overlay) {
  if (prm.format == "json")
    emit(prm, sl::to_json(b).dump(2) + "\n");
  else if (prm.format == "csv")
    emit(prm, body_csv(b));
  else
    emit(prm, sl::render_svg(overlay));
}

sl::ConvexBody named_body(const std::string& name, const Params& prm) {
  if (name == "square") return sl::unit_square();
  if (name == "diamond") return sl::unit_diamond();
  if (name == "disc") return sl::unit_disc();
  if (name == "k3") return sl::parabolic_k3();
  if (name == "r1") return sl::rectangle(-2, 2, -1, 1);
  if (name == "r2") return sl::rectangle(-2, 2, -0.5, 0.5);
  if (name == "ellipse") return sl::make_ellipse({0, 0}, prm.a, prm.b, 0.0);
  if (name == "random-polygon") return sl::random_body(prm.seed, "polygon");
  if (name == "random-smooth") return sl::random_body(prm.seed, "smooth");
  sl::fail(sl::ErrorKind::InvalidArgument, "unknown body name: " + name);
}

int cmd_body(const std::string& name, const Params& prm) {
  sl::ConvexBody b = named_body(name, prm);
  emit_body(prm, b, {{name, b}});
  return 0;
}

int cmd_combine(const std::string& kind, const std::string& f1, const std::string& f2, const Params& prm) {
  sl::ConvexBody k1 = sl::read_body_file(f1), k2 = sl::read_body_file(f2);
  double p = parse_real(prm.p, "--p");
  double a = prm.a, b = prm.b;
  sl::ConvexBody out;
  std::string label;
  if (kind == "fiber") {
    if (prm.lambda >= 0) a = 1 - prm.lambda, b = prm.lambda;
    sl::Frame fr = sl::Frame::planar(parse_u(prm.u, {1, 0}), prm.grid);
    out = sl::lp_fiber_combine(k1, k2, sl::FiberSpec{p, a, b, fr});
    label = "fiber sum";
  } else if (kind == "graph") {
    if (prm.lambda >= 0) a = prm.lambda, b = 1 - prm.lambda;
    sl::Frame fr = sl::Frame::planar(parse_u(prm.u, {0, 1}), prm.grid);
    out = sl::as_body(sl::graph_combine(k1, k2, a, b, fr));
    label = "graph sum";
  } else if (kind == "chord") {
    if (prm.lambda >= 0) a = prm.lambda, b = 1 - prm.lambda;
    sl::Frame fr = sl::Frame::planar(parse_u(prm.u, {0, 1}), prm.grid);
    sl::BodyFlags flags;
    sl::Slab s = sl::lp_chord_combine(k1, k2, sl::PMeanSpec{p, a, b}, fr, &flags);
    out = sl::as_body(std::move(s));
    out.flags = flags;
    label = "chord sum";
  } else {
    sl::fail(sl::ErrorKind::InvalidArgument, "combine kind must be fiber, graph or chord");
  }
  emit_body(prm, out, {{label_of(f1), k1}, {label_of(f2), k2}, {label, out}});
  return 0;
}

int cmd_functional(const std::string& kind, const std::vector<std::string>& files, const Params& prm) {
  if (files.empty()) sl::fail(sl::ErrorKind::InvalidArgument, "functional needs a body file");
  sl::ConvexBody k1 = sl::read_body_file(files[0]);
  double p = parse_real(prm.p, "--p");
  json r{{"functional", kind}};
  std::vector<double> quotients;
  auto need_two = [&]() {
    if (files.size() < 2) sl::fail(sl::ErrorKind::InvalidArgument, kind + " needs two body files");
    return sl::read_body_file(files[1]);
  };
  // Deepen the eps schedule until the extrapolated quotients settle.
  auto settle = [&](const auto& estimate) {
    sl::DerivativeEstimate d;
    for (int level = 0; level <= 3; ++level) {
      d = estimate(sl::verify_detail::schedule_at(level));
      if (d.error <= 1e-5 * std::max(1.0, std::fabs(d.value))) return d;
    }
    if (d.error > 1e-3 * std::max(1.0, std::fabs(d.value)))
      sl::fail(sl::ErrorKind::NonConvergent, "difference quotients did not settle (last change " + std::to_string(d.error) + ")");
    return d;
  };
  auto record = [&](const sl::DerivativeEstimate& d) {
    r["value"] = d.value;
    r["error"] = d.error;
    r["eps"] = d.eps;
    r["quotients"] = d.quotients;
    r["estimates"] = d.estimates;
  };
  if (kind == "volume") {
    r["value"] = sl::volume(k1);
  } else if (kind == "asa") {
    r["p"] = p;
    r["value"] = sl::asa_p(k1, p);
  } else if (kind == "mixed-fiber") {
    r["p"] = p;
    sl::ConvexBody k2 = need_two();
    sl::Frame fr = sl::Frame::planar(parse_u(prm.u, {1, 0}), prm.grid);
    record(settle([&](const sl::DerivativeSchedule& sc) { return sl::mixed_fiber_surface(k1, k2, p, fr, sc); }));
  } else if (kind == "mixed-chord") {
    r["p"] = p;
    sl::ConvexBody k2 = need_two();
    sl::Frame fr = sl::Frame::planar(parse_u(prm.u, {0, 1}), prm.grid);
    record(settle([&](const sl::DerivativeSchedule& sc) { return sl::mixed_chord_surface(k1, k2, p, fr, sc); }));
  } else if (kind == "mixed-graph") {
    r["p"] = p;
    sl::ConvexBody k2 = need_two();
    sl::Frame fr = sl::Frame::planar(parse_u(prm.u, {0, 1}), prm.grid);
    record(settle([&](const sl::DerivativeSchedule& sc) { return sl::mixed_graph_asa(k1, k2, p, fr, sc); }));
  } else {
    sl::fail(sl::ErrorKind::InvalidArgument, "functional must be volume, asa, mixed-fiber, mixed-chord or mixed-graph");
  }
  if (prm.format == "csv") {
    std::ostringstream o;
    o.precision(17);
    o << "key,value\n";
    for (auto& [k, v] : r.items())
      if (v.is_number()) o << k << "," << v.get<double>() << "\n";
    if (r.contains("quotients"))
      for (size_t i = 0; i < r["eps"].size(); ++i)
        o << "quotient@" << r["eps"][i].get<double>() << "," << r["quotients"][i].get<double>() << "\n";
    emit(prm, o.str());
  } else {
    emit(prm, r.dump(2) + "\n");
  }
  return 0;
}

int cmd_verify(const std::string& suite, const Params& prm, const std::vector<double>& ps, const std::string& witness_dir) {
  sl::TrialConfig cfg;
  cfg.seed = prm.seed;
  cfg.trials = prm.trials;
  cfg.tol = prm.tol;
  cfg.resolution = prm.grid;
  cfg.p_values = ps;
  if (prm.lambda >= 0) cfg.lambda_values = {prm.lambda};
  cfg.witness_dir = witness_dir;
  std::vector<std::string> names = suite == "all" ? sl::suite_names() : std::vector<std::string>{suite};
  std::vector<sl::InequalityReport> reports;
  for (const auto& n : names) reports.push_back(sl::run_suite(n, cfg));
  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass;
  std::string text;
  if (prm.format == "csv") {
    std::ostringstream o;
    o.precision(17);
    o << "suite,check,trials,excluded,worst_slack,tol,pass,informational\n";
    for (const auto& r : reports)
      for (const auto& c : r.checks)
        o << r.suite << "," << c.name << "," << c.trials << "," << c.excluded << "," << c.worst_slack << "," << c.tol << ","
          << (c.pass() ? "true" : "false") << "," << (c.informational ? "true" : "false") << "\n";
    text = o.str();
  } else if (suite == "all") {
    json j{{"seed", prm.seed}, {"pass", pass}, {"suites", json::array()}};
    for (const auto& r : reports) j["suites"].push_back(sl::report_to_json(r));
    text = j.dump(2) + "\n";
  } else {
    text = sl::report_to_json(reports[0]).dump(2) + "\n";
  }
  emit(prm, text);
  return pass ? 0 : 1;
}

int cmd_render(const std::vector<std::string>& files, const Params& prm) {
  std::vector<std::pair<std::string, sl::ConvexBody>> bodies;
  for (const auto& f : files) bodies.push_back({label_of(f), sl::read_body_file(f)});
  emit(prm, sl::render_svg(bodies));
  return 0;
}

int report_error(const std::string& kind, const std::string& message, int code) {
  std::cerr << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steinerlab: fiber, graph and chord combinations of convex bodies"};
  app.require_subcommand(1);
  Params prm;
  auto common = [&](CLI::App* c) {
    c->add_option("--p", prm.p, "exponent p (accepts inf, -inf)");
    c->add_option("--a", prm.a, "first weight");
    c->add_option("--b", prm.b, "second weight");
    c->add_option("--lambda", prm.lambda, "convex weight in [0, 1]");
    c->add_option("--u", prm.u, "direction \"x,y\"");
    c->add_option("--grid", prm.grid, "projection grid size N")->check(CLI::Range(3, 1 << 22));
    c->add_option("--seed", prm.seed, "master seed");
    c->add_option("--trials", prm.trials, "number of random trials");
    c->add_option("--tol", prm.tol, "primary tolerance override");
    c->add_option("--out", prm.out, "output path (default stdout)");
    c->add_option("--format", prm.format, "json | csv | svg")->check(CLI::IsMember({"json", "csv", "svg"}));
  };

  std::string body_name;
  auto* body = app.add_subcommand("body", "write a named body (square, diamond, disc, k3, r1, r2, ellipse, random-polygon, random-smooth)");
  body->add_option("name", body_name)->required();
  common(body);

  std::string combine_kind, in1, in2;
  auto* combine = app.add_subcommand("combine", "combine two bodies: fiber | graph | chord");
  combine->add_option("kind", combine_kind)->required()->check(CLI::IsMember({"fiber", "graph", "chord"}));
  combine->add_option("body1", in1)->required();
  combine->add_option("body2", in2)->required();
  common(combine);

  std::string fkind;
  std::vector<std::string> ffiles;
  auto* functional = app.add_subcommand("functional", "volume | asa | mixed-fiber | mixed-chord | mixed-graph");
  functional->add_option("kind", fkind)->required();
  functional->add_option("bodies", ffiles)->required();
  common(functional);

  std::string suite, witness_dir;
  auto* verify = app.add_subcommand("verify", "run a verification suite, or all");
  verify->add_option("suite", suite)->required();
  verify->add_option("--witness-dir", witness_dir, "write worst-case witnesses here");
  common(verify);

  std::vector<std::string> rfiles;
  auto* render = app.add_subcommand("render", "render bodies to SVG");
  render->add_option("bodies", rfiles)->required();
  common(render);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("InvalidArgument", e.what(), 2);
  }

  try {
    if (*body) return cmd_body(body_name, prm);
    if (*combine) return cmd_combine(combine_kind, in1, in2, prm);
    if (*functional) return cmd_functional(fkind, ffiles, prm);
    if (*verify) {
      if (suite != "all") {
        const auto& names = sl::suite_names();
        if (std::find(names.begin(), names.end(), suite) == names.end())
          sl::fail(sl::ErrorKind::InvalidArgument, "unknown suite: " + suite);
      }
      std::vector<double> ps;
      if (verify->count("--p")) ps = {parse_real(prm.p, "--p")};
      return cmd_verify(suite, prm, ps, witness_dir);
    }
    if (*render) return cmd_render(rfiles, prm);
  } catch (const sl::GeometryError& e) {
    return report_error(sl::to_string(e.kind()), e.what(), e.kind() == sl::ErrorKind::NonConvergent ? 3 : 2);
  } catch (const std::exception& e) {
    return report_error("InvalidArgument", e.what(), 2);
  }
  return 2;
}
