#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "steinerlab/chord.hpp"
#include "steinerlab/fiber.hpp"
#include "steinerlab/functionals.hpp"
#include "steinerlab/graph.hpp"
#include "steinerlab/io_json.hpp"
#include "steinerlab/parallel.hpp"
#include "steinerlab/random.hpp"

namespace steinerlab {

/// Knobs shared by all suites.  Negative / empty values select the suite's
/// documented defaults.
struct TrialConfig {
  uint64_t seed = 7;
  int trials = -1;                     ///< number of random pairs (bodies)
  std::vector<double> p_values;        ///< p sweep override
  std::vector<double> lambda_values;   ///< theta / lambda sweep override
  double a = -1, b = -1;               ///< fixed weights (chord suites)
  int resolution = 2049;               ///< projection grid size
  double tol = -1;                     ///< override of the primary tolerance
  std::string mix = "mixed";           ///< body kinds: polygon | smooth | mixed
  std::string witness_dir;             ///< write worst-case witnesses here if set
};

/// Outcome of one named check inside a suite.
struct CheckResult {
  std::string name;
  std::string statement;
  double tol = 0;
  bool informational = false;  ///< diagnostic only; does not affect the verdict
  int trials = 0;
  int excluded = 0;            ///< trials skipped (NonConvergent, assumption violated)
  int refined = 0;             ///< trials re-run at doubled resolution
  int persistent = 0;          ///< negative slack surviving two refinements
  double worst_slack = std::numeric_limits<double>::infinity();
  json worst_witness;
  json near_equality = json::array();
  bool require_no_exclusions = false;

  bool pass() const {
    if (informational) return true;
    if (require_no_exclusions && excluded > 0) return false;
    if (trials == 0) return false;
    return worst_slack >= -tol && persistent == 0;
  }
};

/// Suite report: pass iff every non-informational check passes.  The
/// suite-level worst slack is expressed in units of the primary tolerance:
/// worst over checks of slack * (tol / check tol).
struct InequalityReport {
  std::string suite;
  int trials = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  double tol = 0;
  bool pass = false;
  std::string witness_path;
  std::vector<CheckResult> checks;

  const CheckResult* check(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

inline json slack_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

inline json check_to_json(const CheckResult& c) {
  json j{{"name", c.name}, {"statement", c.statement}, {"trials", c.trials}, {"excluded", c.excluded},
         {"refined", c.refined}, {"persistent_negative", c.persistent}, {"worst_slack", slack_json(c.worst_slack)},
         {"tol", c.tol}, {"pass", c.pass()}, {"informational", c.informational}};
  if (!c.worst_witness.is_null()) j["worst_witness"] = c.worst_witness;
  if (!c.near_equality.empty()) j["near_equality"] = c.near_equality;
  return j;
}

/// Report JSON {suite, trials, worst_slack, tol, pass, witness_path, checks}.
inline json report_to_json(const InequalityReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(check_to_json(c));
  return json{{"suite", r.suite},
              {"trials", r.trials},
              {"worst_slack", slack_json(r.worst_slack)},
              {"tol", r.tol},
              {"pass", r.pass},
              {"witness_path", r.witness_path.empty() ? json(nullptr) : json(r.witness_path)},
              {"checks", checks}};
}

namespace verify_detail {

/// A single evaluated trial of one check.
struct Sample {
  int check = 0;
  double slack = 0;
  bool excluded = false;
  bool refined = false;
  bool persistent = false;
  json params;
};

/// Signed slack, at grid refinement level 0, 1, 2 (resolution doubling).
using Evaluator = std::function<double(int level)>;

/// Refinement protocol: a slack in (-tol, 0) is re-evaluated at 2N and 4N;
/// negative slack that does not shrink is reported as persistent.
inline Sample settle(int check, double tol, const Evaluator& eval, json params) {
  Sample s{check, 0, false, false, false, std::move(params)};
  try {
    double s0 = eval(0);
    s.slack = s0;
    if (s0 < 0 && s0 > -tol && -s0 > 1e-3 * tol) {
      s.refined = true;
      double s1 = eval(1);
      double s2 = s1 < 0 ? eval(2) : s1;
      s.slack = s2;
      s.persistent = s1 < 0 && s2 < 0 && -s2 > 1e-3 * tol && std::fabs(s2) >= 0.5 * std::fabs(s0);
    }
  } catch (const GeometryError& e) {
    if (e.kind() != ErrorKind::NonConvergent && e.kind() != ErrorKind::CurvatureAssumptionViolated) throw;
    s.excluded = true;
    s.params["excluded"] = to_string(e.kind());
  }
  return s;
}

inline Sample fixed(int check, double slack, json params) { return Sample{check, slack, false, false, false, std::move(params)}; }

/// Collects samples of a suite into its checks in a fixed order.
class Suite {
 public:
  Suite(std::string name, const TrialConfig& cfg) : name_(std::move(name)), cfg_(cfg) {}

  int add_check(std::string name, std::string statement, double tol, bool informational = false) {
    CheckResult c;
    c.name = std::move(name);
    c.statement = std::move(statement);
    c.tol = tol;
    c.informational = informational;
    checks_.push_back(std::move(c));
    return static_cast<int>(checks_.size()) - 1;
  }
  CheckResult& check(int i) { return checks_[i]; }

  /// Runs trial(i) for i < n in parallel; merges samples in trial order.
  void run(int n, const std::function<std::vector<Sample>(int)>& trial) {
    std::vector<std::vector<Sample>> out(n);
    parallel_for(static_cast<size_t>(n), [&](size_t i) { out[i] = trial(static_cast<int>(i)); });
    for (int i = 0; i < n; ++i)
      for (auto& s : out[i]) merge(i, std::move(s));
    trials_ += n;
  }

  void merge(int trial, Sample s) {
    CheckResult& c = checks_.at(s.check);
    c.trials += 1;
    s.params["trial"] = trial;
    if (s.excluded) {
      c.excluded += 1;
      return;
    }
    if (s.refined) c.refined += 1;
    if (s.persistent) c.persistent += 1;
    if (std::fabs(s.slack) < 1e-4 && c.near_equality.size() < 10) c.near_equality.push_back(s.params);
    if (std::isnan(s.slack) || s.slack < c.worst_slack || c.worst_witness.is_null()) {
      if (!(s.slack >= c.worst_slack) || c.worst_witness.is_null()) {
        c.worst_slack = std::isnan(s.slack) ? -std::numeric_limits<double>::infinity() : s.slack;
        s.params["slack"] = slack_json(s.slack);
        c.worst_witness = s.params;
      }
    }
  }

  const TrialConfig& cfg() const { return cfg_; }

  InequalityReport finish(const std::function<json(const json&)>& witness_bodies = nullptr) {
    InequalityReport r;
    r.suite = name_;
    r.trials = trials_;
    r.tol = checks_.empty() ? 0 : checks_[0].tol;
    r.pass = !checks_.empty();
    for (const auto& c : checks_) {
      if (c.informational || c.trials == 0) continue;
      r.pass = r.pass && c.pass();
      if (c.trials - c.excluded > 0) {
        double scaled_slack = c.tol > 0 ? c.worst_slack * (r.tol / c.tol) : c.worst_slack;
        if (!c.pass() && scaled_slack >= -r.tol) scaled_slack = -r.tol * (1 + 1e-9) - 0.0;
        r.worst_slack = std::min(r.worst_slack, scaled_slack);
      }
    }
    if (!cfg_.witness_dir.empty()) {
      json w{{"suite", name_}, {"seed", cfg_.seed}, {"checks", json::array()}};
      for (const auto& c : checks_) {
        json e{{"name", c.name}, {"worst_slack", slack_json(c.worst_slack)}, {"witness", c.worst_witness}};
        if (witness_bodies && !c.worst_witness.is_null()) e["bodies"] = witness_bodies(c.worst_witness);
        w["checks"].push_back(e);
      }
      r.witness_path = cfg_.witness_dir + "/" + name_ + "-witness.json";
      write_text_file(r.witness_path, w.dump(2) + "\n");
    }
    for (const auto& c : checks_)
      if (c.trials > 0) r.checks.push_back(c);
    return r;
  }

 private:
  std::string name_;
  TrialConfig cfg_;
  std::vector<CheckResult> checks_;
  int trials_ = 0;
};

inline double rel(double lhs, double rhs) { return (lhs - rhs) / std::max(std::fabs(rhs), 1e-300); }

inline int count_or(const TrialConfig& c, int d) { return c.trials > 0 ? c.trials : d; }
inline std::vector<double> sweep_or(const std::vector<double>& v, std::vector<double> d) { return v.empty() ? d : v; }
inline double tol_or(const TrialConfig& c, double d) { return c.tol > 0 ? c.tol : d; }

inline Frame fiber_frame(int resolution) { return Frame::planar({1, 0}, resolution); }
inline Frame graph_frame(int resolution) { return Frame::planar({0, 1}, resolution); }

inline int level_resolution(int n, int level) { return ((n - 1) << level) + 1; }

/// Body kinds for trial i of a mixed corpus.
inline std::pair<std::string, std::string> kinds_for(const std::string& mix, int i) {
  if (mix == "polygon") return {"polygon", "polygon"};
  if (mix == "smooth") return {"smooth", "smooth"};
  static const char* k[3][2] = {{"polygon", "polygon"}, {"polygon", "smooth"}, {"smooth", "smooth"}};
  return {k[i % 3][0], k[i % 3][1]};
}

inline ConvexBody make_random(Rng& rng, const std::string& kind) {
  return kind == "polygon" ? random_polygon(rng) : random_smooth(rng);
}

/// Random pair with independent kinds, for general-position suites.
inline std::pair<ConvexBody, ConvexBody> general_pair(uint64_t seed, const std::string& mix, int i) {
  Rng rng(seed);
  auto [ka, kb] = kinds_for(mix, i);
  ConvexBody a = make_random(rng, ka);
  ConvexBody b = make_random(rng, kb);
  return {a, b};
}

/// Equal-projection pair over u-perp with u = e2: polygon pairs normalized
/// onto [-1,1], or smooth slab pairs from the bump construction.
inline std::pair<ConvexBody, ConvexBody> projection_pair(uint64_t seed, const std::string& kind, const Frame& frame) {
  Rng rng(seed);
  if (kind == "polygon") return random_polygon_pair(rng, frame);
  auto [s1, s2] = random_smooth_pair(rng, frame);
  return {as_body(std::move(s1)), as_body(std::move(s2))};
}

inline std::string pair_kind(const std::string& mix, int i) {
  if (mix == "polygon" || mix == "smooth") return mix;
  return i % 2 == 0 ? "polygon" : "smooth";
}

inline FiberOptions sweep_fiber_options(int level) {
  FiberOptions o;
  o.directions = 1024 << level;
  o.refine_tol = 1e-6 / static_cast<double>(1 << (2 * level));
  o.max_directions = 1 << 14 << level;
  return o;
}

/// Derivative schedule at refinement level `level`: the default steps
/// shifted down by 16^level, so refinement also moves toward eps -> 0.
inline DerivativeSchedule schedule_at(int level) {
  DerivativeSchedule d;
  for (auto& e : d.eps_list) e = std::ldexp(e, -4 * level);
  return d;
}

/// Mixed-area estimate at refinement level `level`, with the step schedule
/// deepened (up to three times) until the Richardson tail is below
/// 1e-5 relative: pairs whose chords vanish at very different rates reach
/// the asymptotic regime only at smaller eps.
template <class F>
double converged_derivative(const F& estimate, int level) {
  DerivativeEstimate d;
  for (int extra = 0; extra <= 3; ++extra) {
    d = estimate(schedule_at(level + extra));
    if (d.error <= 1e-5 * std::max(1.0, std::fabs(d.value))) break;
  }
  return d.value;
}


}  // namespace verify_detail

// =================================================================== suites

/// vol((1-t) o_p K1 [+]_p t o_p K2)^{p/l} >= t vol(K1)^{p/l} + (1-t) vol(K2)^{p/l}
/// with the weights exactly as stated, plus the p = 1 case with weights
/// (1-t, t), on general random origin-interior pairs; a diagnostic sweep on
/// pairs with a common shadow on M is reported separately.
inline InequalityReport verify_fiber_bmi(const TrialConfig& cfg) {
  using namespace verify_detail;
  Suite suite("fiber-bmi", cfg);
  double tol = tol_or(cfg, 1e-6);
  int c_main = suite.add_check("theorem", "vol((1-t)o_p K1 [+]_p t o_p K2)^p >= t V1^p + (1-t) V2^p", tol);
  int c_mcm = suite.add_check("weights-1-t", "vol((1-t)o_p K1 [+]_p t o_p K2)^p >= (1-t) V1^p + t V2^p", tol);
  int c_shadow = suite.add_check("common-shadow", "theorem on pairs with K1|M = K2|M (diagnostic)", tol, true);
  auto ps = sweep_or(cfg.p_values, {1.0, 1.5, 2.0, 3.0});
  std::map<double, int> c_shmcm;
  for (double p : ps) {
    std::ostringstream name;
    name << "common-shadow-weights-1-t-p" << p;
    c_shmcm[p] = suite.add_check(name.str(), "weights (1-t, t) on pairs with K1|M = K2|M (diagnostic)", tol, true);
  }
  auto ts = sweep_or(cfg.lambda_values, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});
  int n = count_or(cfg, 200);
  int n_shadow = std::min(n, 20);
  uint64_t stream = stream_id("fiber-bmi");
  Frame fr = fiber_frame(cfg.resolution);
  auto lhs = [&](const ConvexBody& k1, const ConvexBody& k2, double p, double a, double b, int level) {
    return volume(lp_fiber_combine(k1, k2, FiberSpec{p, a, b, fr}, sweep_fiber_options(level)));
  };
  suite.run(n + n_shadow, [&](int i) {
    std::vector<Sample> out;
    bool shadow = i >= n;
    uint64_t seed = derive_seed(cfg.seed, stream, static_cast<uint64_t>(i));
    ConvexBody k1, k2;
    if (shadow) {
      Rng rng(seed);
      std::tie(k1, k2) = random_polygon_pair(rng, fr);
    } else {
      std::tie(k1, k2) = general_pair(seed, cfg.mix, i);
    }
    double v1 = volume(k1), v2 = volume(k2);
    for (double p : ps)
      for (double t : ts) {
        json prm{{"p", p}, {"theta", t}, {"kinds", {k1.kind_name(), k2.kind_name()}}};
        double rhs = t * std::pow(v1, p) + (1 - t) * std::pow(v2, p);
        // The level-0 combination is shared by both weight placements.
        double v0 = -1;
        auto vol_at = [&](int lv) {
          if (lv > 0) return lhs(k1, k2, p, 1 - t, t, lv);
          if (v0 < 0) v0 = lhs(k1, k2, p, 1 - t, t, 0);
          return v0;
        };
        out.push_back(settle(shadow ? c_shadow : c_main, tol, [&](int lv) { return rel(std::pow(vol_at(lv), p), rhs); }, prm));
        double r1 = (1 - t) * std::pow(v1, p) + t * std::pow(v2, p);
        out.push_back(settle(shadow ? c_shmcm.at(p) : c_mcm, tol, [&](int lv) { return rel(std::pow(vol_at(lv), p), r1); }, prm));
      }
    return out;
  });
  return suite.finish([&](const json& w) {
    int i = w.at("trial").get<int>();
    uint64_t seed = derive_seed(cfg.seed, stream, static_cast<uint64_t>(i));
    ConvexBody k1, k2;
    if (i >= n) {
      Rng rng(seed);
      std::tie(k1, k2) = random_polygon_pair(rng, fr);
    } else {
      std::tie(k1, k2) = general_pair(seed, cfg.mix, i);
    }
    return json::array({to_json(k1), to_json(k2)});
  });
}

/// S_p(K1,K2) >= (l/p) V1^{(l-p)/l} V2^{p/l}; equal-volume variant; and the
/// self-consistency value S_p(K,K) = (l/p) vol(K).  Trials whose difference
/// quotients do not converge are excluded and counted; any exclusion fails
/// the check (the bound must be established on every trial).
inline InequalityReport verify_fiber_mfi(const TrialConfig& cfg) {
  using namespace verify_detail;
  Suite suite("fiber-mfi", cfg);
  double tol = tol_or(cfg, 1e-3);
  int c_main = suite.add_check("theorem", "S_p(K1,K2) >= (1/p) V1^{1-p} V2^p", tol);
  int c_eqv = suite.add_check("equal-volume", "V1 = V2: S_p(K1,K2) >= (1/p) V1", tol);
  int c_self = suite.add_check("self", "S_p(K,K) = (1/p) vol(K)", tol);
  suite.check(c_main).require_no_exclusions = true;
  suite.check(c_eqv).require_no_exclusions = true;
  suite.check(c_self).require_no_exclusions = true;
  auto ps = sweep_or(cfg.p_values, {1.0, 2.0});
  int n = count_or(cfg, 50);
  uint64_t stream = stream_id("fiber-mfi");
  Frame fr = fiber_frame(cfg.resolution);
  // Difference quotients on a fixed direction set need smooth inputs: for
  // polygons the unsampled edge normals leave corner errors that jump in eps.
  std::string mix = cfg.mix == "mixed" ? "smooth" : cfg.mix;
  auto opts = [](int lv) {
    FiberOptions o = mixed_fiber_options();
    o.directions = 2048 << lv;
    return o;
  };
  suite.run(n, [&](int i) {
    std::vector<Sample> out;
    auto [k1, k2] = general_pair(derive_seed(cfg.seed, stream, static_cast<uint64_t>(i)), mix, i);
    double v1 = volume(k1), v2 = volume(k2);
    ConvexBody k2e = dilate(k2, std::sqrt(v1 / v2));
    for (double p : ps) {
      json prm{{"p", p}, {"kinds", {k1.kind_name(), k2.kind_name()}}};
      double rhs = std::pow(v1, 1 - p) * std::pow(v2, p) / p;
      out.push_back(settle(c_main, tol, [&](int lv) {
        return rel(converged_derivative([&](const DerivativeSchedule& sc) { return mixed_fiber_surface(k1, k2, p, fr, sc, opts(lv)); }, lv), rhs);
      }, prm));
      out.push_back(settle(c_eqv, tol, [&](int lv) {
        return rel(converged_derivative([&](const DerivativeSchedule& sc) { return mixed_fiber_surface(k1, k2e, p, fr, sc, opts(lv)); }, lv), v1 / p);
      }, prm));
      if (i < 20)
        out.push_back(settle(c_self, tol, [&](int lv) {
          return -std::fabs(rel(converged_derivative([&](const DerivativeSchedule& sc) { return mixed_fiber_surface(k1, k1, p, fr, sc, opts(lv)); }, lv), v1 / p));
        }, prm));
    }
    return out;
  });
  return suite.finish([&](const json& w) {
    auto [k1, k2] = general_pair(derive_seed(cfg.seed, stream, w.at("trial").get<uint64_t>()), mix, w.at("trial").get<int>());
    return json::array({to_json(k1), to_json(k2)});
  });
}

/// Chord Brunn-Minkowski: p = 1 equality, p in (0,1) upper bound, p > 1
/// reversed, equality for dilate-translate pairs, and the restricted-body
/// form for pairs with different projections.
inline InequalityReport verify_chord_bmi(const TrialConfig& cfg) {
  using namespace verify_detail;
  Suite suite("chord-bmi", cfg);
  double tol = tol_or(cfg, 1e-6);
  int c_eq = suite.add_check("p1-equality", "vol(a.K1 (+)_1 b.K2) = a V1 + b V2 (relative)", 1e-8);
  int c_lo = suite.add_check("p-below-1", "p in (0,1): vol^p <= a V1^p + b V2^p", tol);
  int c_hi = suite.add_check("p-above-1", "p > 1: vol^p >= a V1^p + b V2^p", tol);
  int c_probe = suite.add_check("equality-probe", "K1 = (cb/a).K2 + tu gives equality", tol);
  int c_gen = suite.add_check("restricted", "general projections with restricted bodies", tol);
  auto ps = sweep_or(cfg.p_values, {0.5, 2.0});
  int n = count_or(cfg, 100);
  uint64_t stream = stream_id("chord-bmi");
  suite.run(n, [&](int i) {
    std::vector<Sample> out;
    uint64_t seed = derive_seed(cfg.seed, stream, static_cast<uint64_t>(i));
    Rng wr(seed ^ 0x5eedULL);
    double a = cfg.a > 0 ? cfg.a : wr.uniform(0.2, 2.0), b = cfg.b > 0 ? cfg.b : wr.uniform(0.2, 2.0);
    double c = wr.uniform(0.3, 3.0), t = wr.uniform(-0.5, 0.5);
    std::string kind = pair_kind(cfg.mix, i);
    auto pair = [&](int lv) { return projection_pair(seed, kind, graph_frame(level_resolution(cfg.resolution, lv))); };
    auto combo = [&](const ConvexBody& k1, const ConvexBody& k2, double p, int lv) {
      return volume(as_body(lp_chord_combine(k1, k2, PMeanSpec{p, a, b}, graph_frame(level_resolution(cfg.resolution, lv)))));
    };
    json base{{"kind", kind}, {"a", a}, {"b", b}};
    out.push_back(settle(c_eq, 1e-8, [&](int lv) {
      auto [k1, k2] = pair(lv);
      return -std::fabs(rel(combo(k1, k2, 1.0, lv), a * volume(k1) + b * volume(k2)));
    }, base));
    for (double p : ps) {
      json prm = base;
      prm["p"] = p;
      int chk = p < 1 ? c_lo : c_hi;
      out.push_back(settle(chk, tol, [&](int lv) {
        auto [k1, k2] = pair(lv);
        double lhs = std::pow(combo(k1, k2, p, lv), p), rhs = a * std::pow(volume(k1), p) + b * std::pow(volume(k2), p);
        return p < 1 ? -rel(lhs, rhs) : rel(lhs, rhs);
      }, prm));
    }
    for (double p : {0.75, 0.5, 2.0}) {
      json prm = base;
      prm["p"] = p;
      prm["c"] = c;
      prm["t"] = t;
      out.push_back(settle(c_probe, tol, [&](int lv) {
        Frame fr = graph_frame(level_resolution(cfg.resolution, lv));
        ConvexBody k2 = pair(lv).second;
        Slab s1 = chord_dilate(k2, c * b / a, p, fr);
        ConvexBody k1 = translate(as_body(std::move(s1)), fr.u2() * t);
        double lhs = std::pow(combo(k1, k2, p, lv), p), rhs = a * std::pow(volume(k1), p) + b * std::pow(volume(k2), p);
        return -std::fabs(rel(lhs, rhs));
      }, prm));
    }
    // Different projections: compare against the restricted bodies.
    for (double p : ps) {
      json prm = base;
      prm["p"] = p;
      out.push_back(settle(c_gen, tol, [&](int lv) {
        Frame fr = graph_frame(level_resolution(cfg.resolution, lv));
        auto [k1, k2] = general_pair(seed ^ 0xabcdULL, "polygon", 0);
        ConvexBody r1 = as_body(restrict_to_common_projection(k1, k2, fr));
        ConvexBody r2 = as_body(restrict_to_common_projection(k2, k1, fr));
        double lhs = std::pow(volume(as_body(lp_chord_combine(k1, k2, PMeanSpec{p, a, b}, fr))), p);
        double rhs = a * std::pow(volume(r1), p) + b * std::pow(volume(r2), p);
        return p < 1 ? -rel(lhs, rhs) : rel(lhs, rhs);
      }, prm));
    }
    return out;
  });
  return suite.finish();
}

/// Chord Minkowski first inequality S <= (1/p) V1^{1-p} V2^p for p in (0,1),
/// reversed for p > 1; S(K,K) = vol(K)/p; equality for K1 = c.K2 + tu; and
/// the difference quotient against the closed form (1/p) int l1^{1-p} l2^p.
inline InequalityReport verify_chord_mfi(const TrialConfig& cfg) {
  using namespace verify_detail;
  Suite suite("chord-mfi", cfg);
  double tol = tol_or(cfg, 1e-3);
  int c_main = suite.add_check("theorem", "p<1: S <= (1/p) V1^{1-p} V2^p; p>1: reversed", tol);
  int c_self = suite.add_check("self", "S(K,K) = vol(K)/p", tol);
  int c_probe = suite.add_check("equality-probe", "K1 = c.K2 + tu gives equality", tol);
  int c_exact = suite.add_check("closed-form", "difference quotient = (1/p) int l1^{1-p} l2^p", tol);
  auto ps = sweep_or(cfg.p_values, {0.5, 2.0});
  int n = count_or(cfg, 50);
  uint64_t stream = stream_id("chord-mfi");
  suite.run(n, [&](int i) {
    std::vector<Sample> out;
    uint64_t seed = derive_seed(cfg.seed, stream, static_cast<uint64_t>(i));
    Rng wr(seed ^ 0x5eedULL);
    double c = wr.uniform(0.3, 3.0), t = wr.uniform(-0.5, 0.5);
    std::string kind = pair_kind(cfg.mix, i);
    for (double p : ps) {
      json prm{{"kind", kind}, {"p", p}};
      auto setup = [&](int lv) {
        Frame fr = graph_frame(level_resolution(cfg.resolution, lv));
        auto pr = projection_pair(seed, kind, fr);
        return std::make_tuple(fr, pr.first, pr.second);
      };
      out.push_back(settle(c_main, tol, [&](int lv) {
        auto [fr, k1, k2] = setup(lv);
        double s = converged_derivative([&](const DerivativeSchedule& sc) { return mixed_chord_surface(k1, k2, p, fr, sc); }, lv);
        double rhs = std::pow(volume(k1), 1 - p) * std::pow(volume(k2), p) / p;
        return p < 1 ? -rel(s, rhs) : rel(s, rhs);
      }, prm));
      out.push_back(settle(c_self, tol, [&](int lv) {
        auto [fr, k1, k2] = setup(lv);
        return -std::fabs(rel(converged_derivative([&](const DerivativeSchedule& sc) { return mixed_chord_surface(k1, k1, p, fr, sc); }, lv), volume(k1) / p));
      }, prm));
      out.push_back(settle(c_probe, tol, [&](int lv) {
        auto [fr, k1, k2] = setup(lv);
        ConvexBody q = translate(as_body(chord_dilate(k2, c, p, fr)), fr.u2() * t);
        double s = converged_derivative([&](const DerivativeSchedule& sc) { return mixed_chord_surface(q, k2, p, fr, sc); }, lv);
        double rhs = std::pow(volume(q), 1 - p) * std::pow(volume(k2), p) / p;
        return -std::fabs(rel(s, rhs));
      }, prm));
      out.push_back(settle(c_exact, tol, [&](int lv) {
        auto [fr, k1, k2] = setup(lv);
        return -std::fabs(rel(converged_derivative([&](const DerivativeSchedule& sc) { return mixed_chord_surface(k1, k2, p, fr, sc); }, lv), mixed_chord_surface_exact(k1, k2, p, fr)));
      }, prm));
    }
    return out;
  });
  return suite.finish();
}

/// as_phi(l<>K1 <>+ (1-l)<>K2) >= l as_phi(K1) + (1-l) as_phi(K2) for the
/// concave branch, <= for the convex branch; the weighted form with a + b != 1;
/// and Steiner monotonicity as_phi(S_u K) >= as_phi(K) (<= for psi).
inline InequalityReport verify_graph_asa_concavity(const TrialConfig& cfg) {
  using namespace verify_detail;
  Suite suite("graph-asa-concavity", cfg);
  double tol = tol_or(cfg, 1e-2);
  int c_phi = suite.add_check("phi-concavity", "as_p(l K1 <>+ (1-l) K2) >= l as_p(K1) + (1-l) as_p(K2), p in (0,1]", tol);
  int c_psi = suite.add_check("psi-convexity", "p in (-2,0): as_p(l K1 <>+ (1-l) K2) <= l as_p(K1) + (1-l) as_p(K2)", tol);
  int c_w = suite.add_check("weighted", "as(aK1<>+bK2) >= a/(a+b) as((a+b)K1) + b/(a+b) as((a+b)K2)", tol);
  int c_st = suite.add_check("steiner", "as_phi(S_u K) >= as_phi(K) (reversed for psi)", tol);
  int c_id = suite.add_check("identical", "K1 = K2: equality", tol);
  auto ps = sweep_or(cfg.p_values, {1.0 / 3.0, 0.5, 1.0, -1.0});
  auto ls = sweep_or(cfg.lambda_values, {0.25, 0.5, 0.75});
  int n = count_or(cfg, 30);
  uint64_t stream = stream_id("graph-asa-concavity");
  suite.run(n, [&](int i) {
    std::vector<Sample> out;
    uint64_t seed = derive_seed(cfg.seed, stream, static_cast<uint64_t>(i));
    Rng wr(seed ^ 0x5eedULL);
    double a = wr.uniform(0.3, 2.0), b = wr.uniform(0.3, 2.0);
    auto pair = [&](int lv) {
      Rng rng(seed);
      return random_smooth_pair(rng, graph_frame(level_resolution(cfg.resolution, lv)));
    };
    for (double p : ps) {
      PhiSpec phi = PhiSpec::power(p);
      bool concave = p > 0;
      for (double l : ls) {
        json prm{{"p", p}, {"lambda", l}};
        out.push_back(settle(concave ? c_phi : c_psi, tol, [&](int lv) {
          auto [s1, s2] = pair(lv);
          double lhs = asa_phi(graph_combine(s1, s2, l, 1 - l), phi);
          double rhs = l * asa_phi(s1, phi) + (1 - l) * asa_phi(s2, phi);
          return concave ? rel(lhs, rhs) : -rel(lhs, rhs);
        }, prm));
      }
      json prm{{"p", p}, {"a", a}, {"b", b}};
      out.push_back(settle(c_w, tol, [&](int lv) {
        auto [s1, s2] = pair(lv);
        double lhs = asa_phi(graph_combine(s1, s2, a, b), phi);
        double rhs = a / (a + b) * asa_phi(graph_dilate(s1, a + b), phi) + b / (a + b) * asa_phi(graph_dilate(s2, a + b), phi);
        return concave ? rel(lhs, rhs) : -rel(lhs, rhs);
      }, prm));
      out.push_back(settle(c_st, tol, [&](int lv) {
        auto [s1, s2] = pair(lv);
        Slab sym = steiner_symmetral(as_body(s1), s1.frame);
        double lhs = asa_phi(sym, phi), rhs = asa_phi(s1, phi);
        return concave ? rel(lhs, rhs) : -rel(lhs, rhs);
      }, json{{"p", p}}));
      out.push_back(settle(c_id, tol, [&](int lv) {
        auto [s1, s2] = pair(lv);
        return -std::fabs(rel(asa_phi(graph_combine(s1, s1, 0.5, 0.5), phi), asa_phi(s1, phi)));
      }, json{{"p", p}}));
    }
    return out;
  });
  return suite.finish();
}

/// S^graph_{u,p}(K1,K2) >= as_p(K2) + (n-p)(n-1)/(n+p) as_p(K1) for p in
/// (0,1), reversed for p in (-n,0); the equal-as_p variant; the (K,K)
/// value; and a diagnostic bound obtained from concavity plus the graph
/// dilation homogeneity as_p(l<>K) = l^{(n-p)/(n+p)} as_p(K).
inline InequalityReport verify_asa_mfi(const TrialConfig& cfg) {
  using namespace verify_detail;
  Suite suite("asa-mfi", cfg);
  double tol = tol_or(cfg, 1e-2);
  const double nd = 2.0;
  int c_main = suite.add_check("theorem", "p in (0,1): S >= as_p(K2) + (n-p)(n-1)/(n+p) as_p(K1)", tol);
  int c_rev = suite.add_check("reversed", "p in (-n,0): S <= as_p(K2) + (n-p)(n-1)/(n+p) as_p(K1)", tol);
  int c_eq = suite.add_check("equal-asa", "as_p(K1) = as_p(K2): S >= n(n-p)/(n+p) as_p(K1)", tol);
  int c_self = suite.add_check("self", "S(K,K) = n(n-p)/(n+p) as_p(K)", tol);
  int c_hom = suite.add_check("homogeneity-bound", "S >= as_p(K2) - 2p/(n+p) as_p(K1) (diagnostic)", tol, true);
  suite.check(c_main).require_no_exclusions = true;
  suite.check(c_rev).require_no_exclusions = true;
  auto ps = sweep_or(cfg.p_values, {0.5, -1.0});
  int n = count_or(cfg, 30);
  uint64_t stream = stream_id("asa-mfi");
  suite.run(n, [&](int i) {
    std::vector<Sample> out;
    uint64_t seed = derive_seed(cfg.seed, stream, static_cast<uint64_t>(i));
    auto pair = [&](int lv) {
      Rng rng(seed);
      auto [s1, s2] = random_smooth_pair(rng, graph_frame(level_resolution(cfg.resolution, lv)));
      return std::make_pair(as_body(s1), as_body(s2));
    };
    for (double p : ps) {
      double coef = (nd - p) * (nd - 1) / (nd + p);
      json prm{{"p", p}};
      Frame fr = graph_frame(cfg.resolution);
      auto S = [&](const ConvexBody& k1, const ConvexBody& k2, int lv) {
        Frame f = graph_frame(level_resolution(cfg.resolution, lv));
        return converged_derivative([&](const DerivativeSchedule& sc) { return mixed_graph_asa(k1, k2, p, f, sc); }, lv);
      };
      out.push_back(settle(p > 0 ? c_main : c_rev, tol, [&](int lv) {
        auto [k1, k2] = pair(lv);
        double rhs = asa_p(k2, p) + coef * asa_p(k1, p);
        double s = S(k1, k2, lv);
        return p > 0 ? rel(s, rhs) : -rel(s, rhs);
      }, prm));
      if (p > 0) {
        out.push_back(settle(c_eq, tol, [&](int lv) {
          auto [k1, k2] = pair(lv);
          double e = (nd - p) / (nd + p);
          double lam = std::pow(asa_p(k1, p) / asa_p(k2, p), 1.0 / e);
          ConvexBody k2e = as_body(graph_dilate(k2.as<Slab>(), lam));
          return rel(S(k1, k2e, lv), nd * (nd - p) / (nd + p) * asa_p(k1, p));
        }, prm));
        out.push_back(settle(c_hom, tol, [&](int lv) {
          auto [k1, k2] = pair(lv);
          return rel(S(k1, k2, lv), asa_p(k2, p) - 2 * p / (nd + p) * asa_p(k1, p));
        }, prm));
      }
      if (i < 10)
        out.push_back(settle(c_self, tol, [&](int lv) {
          auto [k1, k2] = pair(lv);
          return -std::fabs(rel(S(k1, k1, lv), nd * (nd - p) / (nd + p) * asa_p(k1, p)));
        }, prm));
      (void)fr;
    }
    return out;
  });
  return suite.finish();
}

/// Square (+)_2 diamond about u = e2 must fail discrete concavity, with the
/// overgraph [1 + (1-|x|)^p]^{1/p}; the same pair is convex for p = 1/2, 1.
inline InequalityReport counterexample_suite(const TrialConfig& cfg = {}) {
  using namespace verify_detail;
  Suite suite("counterexample", cfg);
  int c_det = suite.add_check("nonconvexity-detected", "p = 2: concavity violation of the overgraph > 0", 0.0);
  int c_form = suite.add_check("overgraph-formula", "p = 2: f(x) = [1 + (1-|x|)^2]^{1/2}", 1e-12);
  int c_conv = suite.add_check("companions-convex", "p in {1/2, 1}: overgraph concave", 1e-10);
  Frame fr = graph_frame(cfg.resolution);
  ConvexBody sq = unit_square(), dm = unit_diamond();
  suite.run(1, [&](int) {
    std::vector<Sample> out;
    BodyFlags fl;
    Slab s = lp_chord_combine(sq, dm, PMeanSpec{2.0, 1.0, 1.0}, fr, &fl);
    double v = concavity_violation(s.grid, s.f);
    out.push_back(fixed(c_det, v - 1e-8, json{{"p", 2}, {"violation", v}, {"flag", fl.concavity_failed}}));
    double worst = 0;
    for (size_t j = 0; j < s.grid.size(); ++j) {
      double x = std::fabs(s.grid.x[j]);
      worst = std::max(worst, std::fabs(s.f[j] - std::sqrt(1 + (1 - x) * (1 - x))));
    }
    out.push_back(fixed(c_form, -worst, json{{"p", 2}, {"max_error", worst}}));
    for (double p : {0.5, 1.0}) {
      Slab c = lp_chord_combine(sq, dm, PMeanSpec{p, 1.0, 1.0}, fr);
      double cv = std::max(concavity_violation(c.grid, c.f), concavity_violation(c.grid, c.g));
      out.push_back(fixed(c_conv, -cv, json{{"p", p}, {"violation", cv}}));
    }
    return out;
  });
  return suite.finish();
}

/// Algebraic identities of the three combinations (commutativity,
/// associativity, distributivity, monotonicity, shadow property) and the
/// geometry-core invariants, on random bodies.
inline InequalityReport verify_algebraic(const TrialConfig& cfg) {
  using namespace verify_detail;
  Suite suite("algebraic", cfg);
  double tol = tol_or(cfg, 1e-6);
  int c_core = suite.add_check("core", "Minkowski additivity, reflection involution, projection/reflection", 1e-9);
  int c_fcomm = suite.add_check("fiber-commutativity", "h(K1 [+]_p K2) = h(K2 [+]_p K1) on grid directions", 1e-9);
  // Nested combinations read supports off tabulated bodies, whose error
  // between directions is bounded by the refinement tolerance (1e-6 scale).
  int c_fassoc = suite.add_check("fiber-associativity", "(K1[+]K2)[+]K3 = K1[+](K2[+]K3) (tabulated)", 1e-5);
  int c_fdil = suite.add_check("fiber-dilation", "(ab)o_p K = a o_p (b o_p K)", 1e-12);
  int c_fdist = suite.add_check("fiber-distributivity", "a o (K1 [+] K2) = (a o K1) [+] (a o K2) (tabulated)", 1e-5);
  int c_fmono = suite.add_check("fiber-monotonicity", "K_i in L_i => h(K1[+]K2) <= h(L1[+]L2) + tol", tol);
  int c_fsh1 = suite.add_check("fiber-shadow-p1", "p = 1: (K1[+]K2)|M = K1|M cap K2|M", tol);
  int c_fsh = suite.add_check("fiber-shadow-p2", "p = 2: (K1[+]K2)|M = K1|M cap K2|M (diagnostic)", tol, true);
  int c_g = suite.add_check("graph", "graph sum: commutativity, associativity, distributivity, shadow", 1e-12);
  int c_gmono = suite.add_check("graph-monotonicity", "graph sum monotone in its arguments", 1e-12);
  int c_c = suite.add_check("chord", "chord sum: commutativity, p-mean symmetry, associativity, shadow", 1e-12);
  int c_stein = suite.add_check("steiner-recovery", "l.K (+)_1 (1-l).K = S_u K", 1e-12);
  int c_len = suite.add_check("chord-concavity", "chord length functions are concave", 1e-12);
  int n = count_or(cfg, 10);
  uint64_t stream = stream_id("algebraic");
  Frame ff = fiber_frame(cfg.resolution);
  Frame gf = graph_frame(cfg.resolution);
  FiberOptions fo;
  fo.directions = 1024;
  fo.refine_tol = 1e-6;
  suite.run(n, [&](int i) {
    std::vector<Sample> out;
    uint64_t seed = derive_seed(cfg.seed, stream, static_cast<uint64_t>(i));
    Rng rng(seed);
    ConvexBody k1 = random_polygon(rng), k2 = random_smooth(rng), k3 = random_polygon(rng);
    double scale = std::max({circumradius(k1), circumradius(k2), circumradius(k3)});
    auto dirs = direction_grid(256);
    // Core.
    {
      double worst = 0;
      ConvexBody s = minkowski_sum(k1, k3);
      for (auto d : dirs) worst = std::max(worst, std::fabs(support(s, d) - support(k1, d) - support(k3, d)));
      Vec2 u = from_angle(rng.uniform(0, kPi));
      ConvexBody rr = reflect(reflect(k1, u), u);
      worst = std::max(worst, hausdorff_distance(rr, k1, 512));
      ConvexBody r2 = reflect(reflect(k2, u), u);
      worst = std::max(worst, hausdorff_distance(r2, k2, 512));
      Interval p0 = project_onto(k1, perp(u)), p1 = project_onto(reflect(k1, u), perp(u));
      worst = std::max({worst, std::fabs(p0.lo - p1.lo), std::fabs(p0.hi - p1.hi)});
      out.push_back(fixed(c_core, -worst / scale, json{{"kind", "core"}}));
    }
    // Fiber combination algebra.
    for (double p : {1.0, 2.0}) {
      json prm{{"p", p}};
      ConvexBody a12 = lp_fiber_combine(k1, k2, FiberSpec{p, 1, 1, ff}, fo);
      // Commutativity of the support evaluation itself (before tabulation).
      FiberEvaluator e12(k1, k2, FiberSpec{p, 1, 1, ff}, fo), e21(k2, k1, FiberSpec{p, 1, 1, ff}, fo);
      double comm = 0;
      for (auto d : dirs) comm = std::max(comm, std::fabs(e12.planar(d) - e21.planar(d)));
      out.push_back(fixed(c_fcomm, -comm / scale, prm));
      ConvexBody l = lp_fiber_combine(a12, k3, FiberSpec{p, 1, 1, ff}, fo);
      ConvexBody r = lp_fiber_combine(k1, lp_fiber_combine(k2, k3, FiberSpec{p, 1, 1, ff}, fo), FiberSpec{p, 1, 1, ff}, fo);
      double assoc = 0;
      for (auto d : dirs) assoc = std::max(assoc, std::fabs(support(l, d) - support(r, d)));
      out.push_back(fixed(c_fassoc, -assoc / scale, prm));
      double a = rng.uniform(0.5, 2.0), b = rng.uniform(0.5, 2.0);
      ConvexBody d1 = fiber_dilate(k1, a * b, p, ff), d2 = fiber_dilate(fiber_dilate(k1, b, p, ff), a, p, ff);
      double dil = 0;
      for (auto d : dirs) dil = std::max(dil, std::fabs(support(d1, d) - support(d2, d)));
      out.push_back(fixed(c_fdil, -dil / scale, prm));
      ConvexBody lhs = fiber_dilate(a12, a, p, ff);
      ConvexBody rhs = lp_fiber_combine(fiber_dilate(k1, a, p, ff), fiber_dilate(k2, a, p, ff), FiberSpec{p, 1, 1, ff}, fo);
      double dist = 0;
      for (auto d : dirs) dist = std::max(dist, std::fabs(support(lhs, d) - support(rhs, d)));
      out.push_back(fixed(c_fdist, -dist / scale, prm));
      ConvexBody L1 = dilate(k1, 1.2), L2 = minkowski_sum(k2, make_disc({0, 0}, 0.1));
      ConvexBody big = lp_fiber_combine(L1, L2, FiberSpec{p, 1, 1, ff}, fo);
      double mono = -INFINITY;
      for (auto d : dirs) mono = std::max(mono, support(a12, d) - support(big, d));
      out.push_back(fixed(c_fmono, -std::max(mono, 0.0) / scale, prm));
      Interval m1 = project_onto(k1, ff.w2()), m2 = project_onto(k2, ff.w2()), mc = project_onto(a12, ff.w2());
      Interval want = intersect(m1, m2);
      double sh = std::max(std::fabs(mc.lo - want.lo), std::fabs(mc.hi - want.hi));
      out.push_back(fixed(p == 1.0 ? c_fsh1 : c_fsh, -sh / scale, prm));
    }
    // Graph combination algebra on equal-projection polygon pairs and smooth slabs.
    {
      auto [g1, g2] = random_polygon_pair(rng, gf);
      ConvexBody g3 = normalize_projection(random_polygon(rng), gf);
      Slab s1 = graph_decompose(g1, gf), s2 = graph_decompose(g2, gf), s3 = graph_decompose(g3, gf);
      double a = rng.uniform(0.2, 2.0), b = rng.uniform(0.2, 2.0);
      double worst = 0;
      auto gap = [&](const Slab& x, const Slab& y) {
        double w = 0;
        for (double q : x.grid.x)
          w = std::max({w, std::fabs(x.grid.interp(x.f, q) - y.grid.interp(y.f, q)), std::fabs(x.grid.interp(x.g, q) - y.grid.interp(y.g, q))});
        for (double q : y.grid.x)
          w = std::max({w, std::fabs(x.grid.interp(x.f, q) - y.grid.interp(y.f, q)), std::fabs(x.grid.interp(x.g, q) - y.grid.interp(y.g, q))});
        return w;
      };
      worst = std::max(worst, gap(graph_combine(s1, s2, a, b), graph_combine(s2, s1, b, a)));
      worst = std::max(worst, gap(graph_combine(graph_combine(s1, s2, 1, 1), s3, 1, 1), graph_combine(s1, graph_combine(s2, s3, 1, 1), 1, 1)));
      worst = std::max(worst, gap(graph_dilate(s1, a + b), graph_combine(s1, s1, a, b)));
      worst = std::max(worst, gap(graph_dilate(graph_dilate(s1, a), b), graph_dilate(s1, a * b)));
      Slab c = graph_combine(s1, s2, a, b);
      worst = std::max({worst, std::fabs(c.grid.lo() - s1.grid.lo()), std::fabs(c.grid.hi() - s1.grid.hi())});
      Slab st = steiner_symmetral(g1, gf);
      Slab refl = graph_decompose(reflect(g1, gf.u2()), gf);
      worst = std::max(worst, gap(st, graph_combine(s1, refl, 0.5, 0.5)));
      out.push_back(fixed(c_g, -worst, json{{"kind", "graph"}}));
      // Monotonicity: raising K2's graphs raises the sum's graphs.
      Slab up = s2;
      for (size_t j = 0; j < up.grid.size(); ++j) {
        double x = up.grid.x[j];
        up.f[j] += 0.1 * (1 - x * x);
      }
      Slab lo = graph_combine(s1, s2, a, b), hi = graph_combine(s1, up, a, b);
      double mono = 0;
      for (double q : hi.grid.x) mono = std::max(mono, lo.grid.interp(lo.f, q) - hi.grid.interp(hi.f, q));
      out.push_back(fixed(c_gmono, -mono, json{{"kind", "graph"}}));
    }
    // Chord combination algebra.
    {
      ConvexBody q1 = random_polygon(rng), q2 = random_polygon(rng), q3 = random_polygon(rng);
      double a = rng.uniform(0.2, 2.0), b = rng.uniform(0.2, 2.0);
      double worst = 0;
      for (double p : {0.5, 1.0, 2.0}) {
        Slab x = lp_chord_combine(q1, q2, PMeanSpec{p, a, b}, gf), y = lp_chord_combine(q2, q1, PMeanSpec{p, b, a}, gf);
        for (double q : x.grid.x) worst = std::max(worst, std::fabs(x.grid.interp(x.f, q) - y.grid.interp(y.f, q)));
        Interval I = intersect(project(q1, gf), project(q2, gf));
        worst = std::max({worst, std::fabs(x.grid.lo() - I.lo), std::fabs(x.grid.hi() - I.hi)});
      }
      for (int k = 0; k < 50; ++k) {
        double s = rng.uniform(0, 3), t = rng.uniform(0, 3), p = rng.uniform(-3, 3);
        worst = std::max(worst, std::fabs(p_mean({p, a, b}, s, t) - p_mean({p, b, a}, t, s)) / (1 + s + t));
      }
      // Associativity at p = 1 (exact on polygons).
      ConvexBody l = as_body(lp_chord_combine(as_body(lp_chord_combine(q1, q2, {1, 1, 1}, gf)), q3, {1, 1, 1}, gf));
      ConvexBody r = as_body(lp_chord_combine(q1, as_body(lp_chord_combine(q2, q3, {1, 1, 1}, gf)), {1, 1, 1}, gf));
      const Slab& ls = l.as<Slab>();
      const Slab& rs = r.as<Slab>();
      for (double q : ls.grid.x) worst = std::max(worst, std::fabs(ls.grid.interp(ls.f, q) - rs.grid.interp(rs.f, q)));
      out.push_back(fixed(c_c, -worst, json{{"kind", "chord"}}));
      double st = 0;
      Slab S = steiner_symmetral(q1, gf);
      for (double lam : {0.0, 0.25, 0.5, 1.0}) {
        if (lam == 0.0 || lam == 1.0) {
          // Weight zero is outside the positive-weight domain; use the chord dilation.
          Slab d = chord_dilate(q1, 1.0, 1.0, gf);
          for (double q : S.grid.x) st = std::max(st, std::fabs(S.grid.interp(S.f, q) - d.grid.interp(d.f, q)));
          continue;
        }
        Slab c = lp_chord_combine(q1, q1, PMeanSpec{1.0, lam, 1 - lam}, gf);
        for (double q : S.grid.x) st = std::max(st, std::fabs(S.grid.interp(S.f, q) - c.grid.interp(c.f, q)));
      }
      out.push_back(fixed(c_stein, -st, json{{"kind", "steiner"}}));
      ChordProfile cp = chord_profile(q1, gf);
      ChordProfile cs = chord_profile(k2, gf);
      double cc = std::max(concavity_violation(cp.grid, cp.lengths), concavity_violation(cs.grid, cs.lengths));
      out.push_back(fixed(c_len, -cc, json{{"kind", "chord-length"}}));
    }
    return out;
  });
  return suite.finish();
}

/// Affine surface area basics: discs, polygons, homogeneity, rotation
/// invariance, and graph-formula vs boundary-formula agreement.
inline InequalityReport verify_asa_basics(const TrialConfig& cfg) {
  using namespace verify_detail;
  Suite suite("asa-basics", cfg);
  int c_disc = suite.add_check("disc", "as_p(B) = 2 pi (boundary and graph formulas)", 1e-3);
  int c_poly = suite.add_check("polygon", "as_p(P) = 0 for p > 0", 1e-6);
  int c_hom = suite.add_check("homogeneity", "as_p(tK) = t^{2(2-p)/(2+p)} as_p(K)", 1e-3);
  int c_cross = suite.add_check("graph-vs-boundary", "asa_phi(power p) = asa_p on smooth bodies", 1e-3);
  int c_rot = suite.add_check("rotation", "as_p invariant under rotation", 1e-6);
  int n = count_or(cfg, 20);
  uint64_t stream = stream_id("asa-basics");
  Frame fr = graph_frame(cfg.resolution);
  suite.run(n, [&](int i) {
    std::vector<Sample> out;
    Rng rng(derive_seed(cfg.seed, stream, static_cast<uint64_t>(i)));
    ConvexBody k = random_smooth(rng);
    ConvexBody poly = random_polygon(rng);
    for (double p : {1.0 / 3.0, 0.5, 1.0}) {
      json prm{{"p", p}};
      if (i == 0) {
        double d1 = asa_p(unit_disc(), p), d2 = asa_phi(unit_disc(), PhiSpec::power(p), fr);
        out.push_back(fixed(c_disc, -std::max(std::fabs(rel(d1, 2 * kPi)), std::fabs(rel(d2, 2 * kPi))), prm));
        out.push_back(fixed(c_poly, -std::fabs(asa_phi(unit_square(), PhiSpec::power(p), fr)), prm));
      }
      out.push_back(fixed(c_poly, -std::max(std::fabs(asa_p(poly, p)), std::fabs(asa_phi(poly, PhiSpec::power(p), fr))), prm));
      double base = asa_p(k, p);
      for (double t : {0.5, 2.0}) {
        double want = std::pow(t, 2 * (2 - p) / (2 + p)) * base;
        double got = asa_phi(dilate(k, t), PhiSpec::power(p), fr);
        out.push_back(fixed(c_hom, -std::fabs(rel(got, want)), json{{"p", p}, {"t", t}}));
      }
      out.push_back(fixed(c_cross, -std::fabs(rel(asa_phi(k, PhiSpec::power(p), fr), base)), prm));
      Vec2 u1 = from_angle(rng.uniform(0, kPi)), u2 = from_angle(rng.uniform(0, kPi));
      ConvexBody rot = reflect(reflect(k, u1), u2);
      out.push_back(fixed(c_rot, -std::fabs(rel(asa_p(rot, p), base)), prm));
    }
    if (i == 0) {
      ConvexBody e = make_ellipse({0, 0}, 1, 2, 0);
      out.push_back(fixed(c_cross, -std::fabs(rel(asa_phi(e, PhiSpec::power(1), fr), asa_p(e, 1))), json{{"body", "ellipse(1,2)"}}));
    }
    return out;
  });
  return suite.finish();
}

/// Volume identities: Steiner symmetrization, fiber dilation homogeneity,
/// chord-sum scaling and graph-sum linearity.
inline InequalityReport verify_volume_identities(const TrialConfig& cfg) {
  using namespace verify_detail;
  Suite suite("volume-identities", cfg);
  int c_st = suite.add_check("steiner", "|vol(S_u P) - vol(P)| <= 1e-10 (polygons)", 1e-10);
  int c_fd = suite.add_check("fiber-dilation", "vol(a o_p K) = a^{l/p} vol(K)", 1e-6);
  int c_cs = suite.add_check("chord-scaling", "vol(a.K (+)_p b.K) = (a+b)^{1/p} vol(K)", 1e-6);
  int c_gl = suite.add_check("graph-linearity", "vol(a<>K1 <>+ b<>K2) = a V1 + b V2", 1e-6);
  int n = count_or(cfg, 100);
  uint64_t stream = stream_id("volume-identities");
  Frame gf = graph_frame(cfg.resolution), ff = fiber_frame(cfg.resolution);
  suite.run(n, [&](int i) {
    std::vector<Sample> out;
    Rng rng(derive_seed(cfg.seed, stream, static_cast<uint64_t>(i)));
    ConvexBody poly = random_polygon(rng);
    Vec2 u = from_angle(rng.uniform(0, kPi));
    Frame fu = Frame::planar(u, cfg.resolution);
    out.push_back(fixed(c_st, -std::fabs(volume(as_body(steiner_symmetral(poly, fu))) - volume(poly)), json{{"angle", angle_of(u)}}));
    if (i < 20) {
      ConvexBody sm = random_smooth(rng);
      for (const ConvexBody* k : {&poly, &sm})
        for (double a : {0.5, 2.0, 4.0})
          for (double p : {1.0, 2.0, 3.0}) {
            double got = volume(fiber_dilate(*k, a, p, ff)), want = std::pow(a, 1.0 / p) * volume(*k);
            out.push_back(fixed(c_fd, -std::fabs(rel(got, want)), json{{"a", a}, {"p", p}, {"kind", k->kind_name()}}));
          }
      for (const ConvexBody* k : {&poly, &sm})
        for (double p : {0.5, 1.0, 2.0}) {
          double a = rng.uniform(0.2, 2), b = rng.uniform(0.2, 2);
          double got = volume(as_body(lp_chord_combine(*k, *k, PMeanSpec{p, a, b}, gf)));
          double want = std::pow(a + b, 1.0 / p) * volume(as_body(graph_decompose(*k, gf)));
          out.push_back(fixed(c_cs, -std::fabs(rel(got, want)), json{{"a", a}, {"b", b}, {"p", p}, {"kind", k->kind_name()}}));
        }
      for (std::string kind : {"polygon", "smooth"}) {
        auto [k1, k2] = projection_pair(rng.next(), kind, gf);
        double a = rng.uniform(0.2, 2), b = rng.uniform(0.2, 2);
        double got = volume(as_body(graph_combine(graph_decompose(k1, gf), graph_decompose(k2, gf), a, b)));
        double want = a * volume(k1) + b * volume(k2);
        out.push_back(fixed(c_gl, -std::fabs(rel(got, want)), json{{"a", a}, {"b", b}, {"kind", kind}}));
      }
    }
    return out;
  });
  return suite.finish();
}

/// Minkowski determinant inequality on random PSD pairs and equality at A = B.
inline InequalityReport verify_minkowski_det(const TrialConfig& cfg) {
  using namespace verify_detail;
  Suite suite("minkowski-det", cfg);
  int c_rand = suite.add_check("random", "det(aA+bB)^{1/m} >= (a+b)^{k/m-1}(a detA^{1/m} + b detB^{1/m})", 1e-12);
  int c_eq = suite.add_check("equality", "A = B: equality", 1e-12);
  int n = count_or(cfg, 10000);
  uint64_t stream = stream_id("minkowski-det");
  suite.run(n, [&](int i) {
    Rng rng(derive_seed(cfg.seed, stream, static_cast<uint64_t>(i)));
    int k = rng.integer(1, 3), m = k + rng.integer(0, 2);
    auto psd = [&]() {
      Eigen::MatrixXd G(k, k);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) G(r, c) = rng.uniform(-1, 1);
      Eigen::MatrixXd A = G * G.transpose();
      return Eigen::MatrixXd(0.5 * (A + A.transpose()));
    };
    Eigen::MatrixXd A = psd(), B = psd();
    double a = rng.uniform(0, 2), b = rng.uniform(0, 2);
    // Equality probe on a matrix with a controlled spectrum: eigenvalues in
    // [0.05, 2], or one exact zero every tenth trial.  (det^{1/m} of a nearly
    // singular matrix is ill-conditioned, so raw G G^T draws are not used.)
    Eigen::MatrixXd C;
    {
      Eigen::MatrixXd G(k, k);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c) G(r, c) = rng.uniform(-1, 1);
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
      Eigen::MatrixXd Q = qr.householderQ();
      Eigen::VectorXd lam(k);
      for (int r = 0; r < k; ++r) lam[r] = rng.uniform(0.05, 2.0);
      if (i % 10 == 5) lam[0] = 0.0;
      C = Q * lam.asDiagonal() * Q.transpose();
      C = 0.5 * (C + C.transpose());
    }
    if (i % 50 == 0) b = 0;
    double scale = std::max(1.0, std::pow((a * A + b * B).cwiseAbs().maxCoeff(), static_cast<double>(k) / m));
    json prm{{"k", k}, {"m", m}, {"a", a}, {"b", b}};
    std::vector<Sample> out;
    out.push_back(fixed(c_rand, minkowski_det_slack(A, B, a, b, m) / scale, prm));
    out.push_back(fixed(c_eq, -std::fabs(minkowski_det_slack(C, C, a, b, m)) / std::max(1.0, std::pow(a + b, static_cast<double>(k) / m) * 2.0), prm));
    return out;
  });
  return suite.finish();
}

/// The worked examples: fiber sums of square and disc (p = 1, 2), graph sums
/// of rectangles / square-disc / square-cap, and chord sums for p = 0, 1, +-inf.
inline InequalityReport verify_worked_examples(const TrialConfig& cfg = {}) {
  using namespace verify_detail;
  Suite suite("worked-examples", cfg);
  int c_f1 = suite.add_check("fiber-p1", "h = |x1| + |x| on 1024 directions; h(1,0) = 2, h(0,1) = 1", 1e-4);
  int c_f2 = suite.add_check("fiber-p2", "h = sqrt(2x1^2+x2^2) (|x2|<=|x1|), sqrt((|x1|+|x2|)^2/2 + x1^2) otherwise", 1e-3);
  int c_rect = suite.add_check("graph-rectangles", "R1 <>+ R2 = [-2,2] x [-3/2,3/2] (vertices)", 0.0);
  int c_sd = suite.add_check("graph-square-disc", "h = |x2| + |x|", 1e-4);
  int c_sk = suite.add_check("graph-square-cap", "bounds x1^2 - 2 <= x2 <= 2", 1e-10);
  int c_c0 = suite.add_check("chord-p0", "square (+)_0 disc: chord 4 sqrt(1-x^2), area 2 pi", 1e-4);
  int c_c1 = suite.add_check("chord-p1", "square (+)_1 cap: |x2| <= 2 - x1^2/2", 1e-10);
  int c_inf = suite.add_check("chord-inf", "p = -inf gives K2's chords, p = +inf gives K1's, exactly", 0.0);
  suite.run(1, [&](int) {
    std::vector<Sample> out;
    ConvexBody sq = unit_square(), disc = unit_disc();
    Frame ff = fiber_frame(cfg.resolution);
    for (double p : {1.0, 2.0}) {
      ConvexBody t = lp_fiber_combine(sq, disc, FiberSpec{p, 1, 1, ff});
      double worst = 0;
      for (auto d : direction_grid(1024)) {
        double x1 = std::fabs(d.x), x2 = std::fabs(d.y);
        double want = p == 1.0 ? x1 + std::hypot(d.x, d.y)
                               : (x2 <= x1 ? std::sqrt(2 * x1 * x1 + x2 * x2) : std::sqrt(0.5 * (x1 + x2) * (x1 + x2) + x1 * x1));
        worst = std::max(worst, std::fabs(support(t, d) - want));
      }
      if (p == 1.0) {
        worst = std::max({worst, std::fabs(support(t, Vec2{1, 0}) - 2), std::fabs(support(t, Vec2{0, 1}) - 1)});
        out.push_back(fixed(c_f1, -worst, json{{"p", 1}, {"max_error", worst}}));
      } else {
        worst = std::max({worst, std::fabs(support(t, Vec2{1, 0}) - std::sqrt(2.0)), std::fabs(support(t, Vec2{0, 1}) - std::sqrt(0.5))});
        out.push_back(fixed(c_f2, -worst, json{{"p", 2}, {"max_error", worst}}));
      }
    }
    Frame gf = graph_frame(cfg.resolution);
    {
      ConvexBody r1 = rectangle(-2, 2, -1, 1), r2 = rectangle(-2, 2, -0.5, 0.5);
      ConvexBody s = as_body(graph_combine(graph_decompose(r1, gf), graph_decompose(r2, gf), 1, 1));
      std::vector<Vec2> got = to_polygon(s), want = rectangle(-2, 2, -1.5, 1.5).as<Polygon>().vertices;
      double worst = got.size() == want.size() ? 0.0 : INFINITY;
      if (got.size() == want.size())
        for (size_t j = 0; j < got.size(); ++j) worst = std::max({worst, std::fabs(got[j].x - want[j].x), std::fabs(got[j].y - want[j].y)});
      out.push_back(fixed(c_rect, -worst, json{{"vertices", got.size()}}));
    }
    {
      ConvexBody s = as_body(graph_combine(sq, disc, 1, 1, gf));
      double worst = 0;
      for (auto d : direction_grid(1024)) worst = std::max(worst, std::fabs(support(s, d) - (std::fabs(d.y) + 1.0)));
      out.push_back(fixed(c_sd, -worst, json{{"max_error", worst}}));
    }
    {
      Slab s = graph_combine(sq, parabolic_k3(), 1, 1, gf);
      double worst = 0;
      for (size_t j = 0; j < s.grid.size(); ++j) {
        double x = s.grid.x[j];
        worst = std::max({worst, std::fabs(s.f[j] - 2), std::fabs(-s.g[j] - (x * x - 2))});
      }
      out.push_back(fixed(c_sk, -worst, json{{"max_error", worst}}));
    }
    {
      Slab s = lp_chord_combine(sq, disc, PMeanSpec{0, 1, 1}, gf);
      double worst = 0;
      for (size_t j = 0; j < s.grid.size(); ++j) {
        double x = s.grid.x[j];
        worst = std::max(worst, std::fabs(s.f[j] + s.g[j] - 4 * std::sqrt(std::max(0.0, 1 - x * x))));
      }
      worst = std::max(worst, std::fabs(volume(as_body(s)) - 2 * kPi));
      out.push_back(fixed(c_c0, -worst, json{{"max_error", worst}}));
    }
    {
      Slab s = lp_chord_combine(sq, parabolic_k3(), PMeanSpec{1, 1, 1}, gf);
      double worst = 0;
      for (size_t j = 0; j < s.grid.size(); ++j) {
        double x = s.grid.x[j], want = 2 - x * x / 2;
        worst = std::max({worst, std::fabs(s.f[j] - want), std::fabs(s.g[j] - want)});
      }
      out.push_back(fixed(c_c1, -worst, json{{"max_error", worst}}));
    }
    {
      double worst = 0;
      for (double p : {-INFINITY, INFINITY}) {
        Slab s = lp_chord_combine(sq, disc, PMeanSpec{p, 1, 1}, gf);
        const ConvexBody& src = p < 0 ? disc : sq;
        GraphValues v = graph_sample(src, gf, s.grid.x);
        for (size_t j = 0; j < s.grid.size(); ++j) {
          double want = std::max(0.0, v.f[j] + v.g[j]);
          worst = std::max(worst, std::fabs((s.f[j] + s.g[j]) - want));
        }
      }
      out.push_back(fixed(c_inf, -worst, json{{"max_error", worst}}));
    }
    return out;
  });
  return suite.finish();
}

// ----------------------------------------------------------------- registry

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"worked-examples", "volume-identities", "fiber-bmi",      "chord-bmi",
                                              "fiber-mfi",       "chord-mfi",         "asa-basics",    "graph-asa-concavity",
                                              "asa-mfi",         "counterexample",    "minkowski-det", "algebraic"};
  return names;
}

inline InequalityReport run_suite(const std::string& name, const TrialConfig& cfg) {
  if (name == "worked-examples") return verify_worked_examples(cfg);
  if (name == "volume-identities") return verify_volume_identities(cfg);
  if (name == "fiber-bmi") return verify_fiber_bmi(cfg);
  if (name == "fiber-mfi") return verify_fiber_mfi(cfg);
  if (name == "chord-bmi") return verify_chord_bmi(cfg);
  if (name == "chord-mfi") return verify_chord_mfi(cfg);
  if (name == "graph-asa-concavity") return verify_graph_asa_concavity(cfg);
  if (name == "asa-mfi") return verify_asa_mfi(cfg);
  if (name == "asa-basics") return verify_asa_basics(cfg);
  if (name == "counterexample") return counterexample_suite(cfg);
  if (name == "minkowski-det") return verify_minkowski_det(cfg);
  if (name == "algebraic") return verify_algebraic(cfg);
  fail(ErrorKind::InvalidArgument, "unknown suite: " + name);
}

}  // namespace steinerlab
