#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "steinerlab/chord.hpp"
#include "steinerlab/fiber.hpp"
#include "steinerlab/graph.hpp"

namespace steinerlab {

// ------------------------------------------------------------------ volume

/// Area of a parabolic cap: integral of the clipped chord length.
inline double cap_area(const ParabolicCap& c) {
  double span = c.top + c.depth;
  if (span <= 0) return 0;
  double x0 = c.curvature > 0 ? std::min(c.half_width, std::sqrt(span / c.curvature)) : c.half_width;
  return 2.0 * (span * x0 - c.curvature * x0 * x0 * x0 / 3.0);
}

/// Lebesgue measure: closed forms for primitives, half-plane polygon area for
/// planar tables, chord quadrature for slabs.
inline double volume(const ConvexBody& body) {
  if (body.is<Polygon>()) return polygon_area(body.as<Polygon>().vertices);
  if (body.is<Box>()) {
    const Box& b = body.as<Box>();
    double v = 1;
    for (size_t i = 0; i < b.lo.size(); ++i) v *= b.hi[i] - b.lo[i];
    return v;
  }
  if (body.is<Ball>()) {
    double r = body.as<Ball>().radius;
    return body.dim == 2 ? kPi * r * r : 4.0 / 3.0 * kPi * r * r * r;
  }
  if (body.is<Ellipse>()) return kPi * body.as<Ellipse>().a * body.as<Ellipse>().b;
  if (body.is<ParabolicCap>()) return cap_area(body.as<ParabolicCap>());
  if (body.is<FourierBody>()) return body.as<FourierBody>().area();
  if (body.is<SupportTable>()) {
    const auto& t = body.as<SupportTable>();
    if (t.dim != 2) fail(ErrorKind::Unsupported, "volume of spatial support tables is not implemented");
    return polygon_area(t.planar->hull.vertices);
  }
  const Slab& s = body.as<Slab>();
  std::vector<double> len(s.grid.size());
  for (size_t j = 0; j < len.size(); ++j) len[j] = s.f[j] + s.g[j];
  return s.grid.integrate(len);
}

// ------------------------------------------------------ affine surface area

enum class PhiKind { PhiConcave, PsiConvex, PowerP };

/// phi (concave branch) or psi (convex branch) of the L_phi / L_psi affine
/// surface area; power-p uses t^{p/(n+p)} with n = 2.
struct PhiSpec {
  PhiKind kind = PhiKind::PowerP;
  double p = 1.0;
  std::function<double(double)> eval;

  static PhiSpec power(double p) { return PhiSpec{PhiKind::PowerP, p, {}}; }
  static PhiSpec phi(std::function<double(double)> f) { return PhiSpec{PhiKind::PhiConcave, 0.0, std::move(f)}; }
  static PhiSpec psi(std::function<double(double)> f) { return PhiSpec{PhiKind::PsiConvex, 0.0, std::move(f)}; }

  /// True for the convex (psi) branch: flat pieces are not admissible.
  bool convex_branch() const { return kind == PhiKind::PsiConvex || (kind == PhiKind::PowerP && p < 0); }

  double operator()(double t) const {
    if (kind == PhiKind::PowerP) {
      if (t == 0) return p > 0 ? 0.0 : std::numeric_limits<double>::infinity();
      return std::pow(t, p / (2.0 + p));
    }
    if (t == 0 && kind == PhiKind::PhiConcave) return 0.0;
    return eval(t);
  }
};

/// Admissibility of a PhiSpec.  With `for_concavity`, the power-p concave
/// branch must also have G(t) = phi(t^3) concave, i.e. p <= 1.
inline void check_phi(const PhiSpec& s, bool for_concavity = false) {
  if (s.kind == PhiKind::PowerP) {
    if (s.p == -2.0) fail(ErrorKind::PoleAtMinusN, "p = -n is a pole of t^{p/(n+p)}");
    if (std::isnan(s.p) || s.p == 0) fail(ErrorKind::InvalidArgument, "power-p needs p != 0");
    if (for_concavity && s.p > 0 && s.p > 1) fail(ErrorKind::InvalidArgument, "phi_p(t^3) is concave only for p <= 1");
    if (for_concavity && s.p < 0 && s.p <= -2) fail(ErrorKind::InvalidArgument, "psi branch needs p in (-n, 0)");
    return;
  }
  if (!s.eval) fail(ErrorKind::InvalidArgument, "custom phi/psi needs an evaluator");
  std::vector<double> t, v;
  for (int k = 0; k <= 60; ++k) t.push_back(std::pow(10.0, -6.0 + 12.0 * k / 60.0));
  for (double x : t) v.push_back(s.eval(x));
  for (size_t i = 1; i + 1 < t.size(); ++i) {
    double chord = ((t[i + 1] - t[i]) * v[i - 1] + (t[i] - t[i - 1]) * v[i + 1]) / (t[i + 1] - t[i - 1]);
    double tol = 1e-9 * (std::fabs(v[i]) + 1);
    if (s.kind == PhiKind::PhiConcave && (v[i] < 0 || v[i + 1] < v[i] - tol || chord > v[i] + tol))
      fail(ErrorKind::InvalidArgument, "phi must be positive, increasing and concave");
    if (s.kind == PhiKind::PsiConvex && (v[i] < 0 || chord < v[i] - tol))
      fail(ErrorKind::InvalidArgument, "psi must be positive and convex");
  }
}

struct AsaOptions {
  int margin = 2;          ///< grid cells excluded at each end of the projection
  double flat_tol = 1e-9;  ///< |f''| below this (relative) counts as flat
};

namespace detail {

/// One graph's contribution to the L_phi affine surface area:
/// integral of phi(|f''| / <f>^3) <f> with <f> = f - x f'.
inline double graph_asa(const Grid& grid, const std::vector<double>& f, const PhiSpec& phi, const AsaOptions& opt,
                        double flat) {
  size_t n = grid.size();
  int m = opt.margin;
  if (n < static_cast<size_t>(2 * m + 5)) fail(ErrorKind::InvalidArgument, "grid too coarse for the curvature formula");
  bool psi = phi.convex_branch();
  auto integrand = [&](double x, double fp, double fpp, double fv) {
    double H = fv - x * fp;
    double c = std::fabs(fpp);
    if (c <= flat) {
      if (psi) fail(ErrorKind::CurvatureAssumptionViolated, "flat boundary piece on the convex branch");
      return 0.0;
    }
    return phi(c / (H * H * H)) * H;
  };
  if (grid.kind == GridKind::Cosine) {
    double dt = kPi / static_cast<double>(n - 1), r = grid.radius();
    std::vector<double> J(n, 0.0);
    for (size_t j = m; j + m < n; ++j) {
      double t = grid.t(j), xt = r * std::sin(t), xtt = r * std::cos(t);
      double Ft = (f[j + 1] - f[j - 1]) / (2 * dt), Ftt = (f[j + 1] - 2 * f[j] + f[j - 1]) / (dt * dt);
      double fp = Ft / xt, fpp = (Ftt - fp * xtt) / (xt * xt);
      J[j] = integrand(grid.x[j], fp, fpp, f[j]) * xt;
    }
    // Quadratic extrapolation of the angle integrand into the margins.
    auto fill = [&](size_t a, int dir) {
      double j2 = J[a], j3 = J[a + dir], j4 = J[a + 2 * dir];
      J[a - dir] = 3 * j2 - 3 * j3 + j4;
      J[a - 2 * dir] = 6 * j2 - 8 * j3 + 3 * j4;
    };
    if (m == 2) {
      fill(2, 1);
      fill(n - 3, -1);
    }
    double s = 0;
    for (size_t j = 0; j < n; ++j) {
      double w = (j == 0 || j == n - 1) ? 1.0 : (j % 2 ? 4.0 : 2.0);
      s += w * J[j];
    }
    return s * dt / 3.0;
  }
  // General nodes: three-point nonuniform differences, trapezoid rule, margins dropped.
  double s = 0;
  std::vector<double> I(n, 0.0);
  for (size_t j = std::max(m, 1); j + std::max(m, 1) < n; ++j) {
    double h0 = grid.x[j] - grid.x[j - 1], h1 = grid.x[j + 1] - grid.x[j];
    double fp = (h0 * h0 * f[j + 1] - h1 * h1 * f[j - 1] + (h1 * h1 - h0 * h0) * f[j]) / (h0 * h1 * (h0 + h1));
    double fpp = 2 * (h0 * f[j + 1] - (h0 + h1) * f[j] + h1 * f[j - 1]) / (h0 * h1 * (h0 + h1));
    I[j] = integrand(grid.x[j], fp, fpp, f[j]);
  }
  for (size_t j = 0; j + 1 < n; ++j) s += 0.5 * (grid.x[j + 1] - grid.x[j]) * (I[j] + I[j + 1]);
  return s;
}

}  // namespace detail

/// L_phi (or L_psi) affine surface area of a slab via the graph formula.
inline double asa_phi(const Slab& s, const PhiSpec& phi, const AsaOptions& opt = {}) {
  check_phi(phi);
  if (s.linear) {
    if (phi.convex_branch()) fail(ErrorKind::CurvatureAssumptionViolated, "polygonal boundary on the convex branch");
    return 0.0;
  }
  double flat = opt.flat_tol / std::max(slab_scale(s), 1e-300);
  return detail::graph_asa(s.grid, s.f, phi, opt, flat) + detail::graph_asa(s.grid, s.g, phi, opt, flat);
}

inline double asa_phi(const ConvexBody& body, const PhiSpec& phi, const Frame& frame, const AsaOptions& opt = {}) {
  if (body.dim != 2) fail(ErrorKind::Unsupported, "affine surface area is planar");
  if (!(inradius_about_origin(body) > 0)) fail(ErrorKind::NotABody, "affine surface area needs an origin-interior body");
  return asa_phi(graph_decompose(body, frame), phi, opt);
}

/// Boundary point, outer normal, curvature and arc element at a normal angle.
struct CurvatureSample {
  Vec2 x;
  Vec2 normal;
  double kappa = 0;
  double weight = 0;  ///< arc length element (rho d theta)
};

/// Curvature samples at n equally spaced normal angles for smooth primitives.
inline std::vector<CurvatureSample> curvature_samples(const ConvexBody& body, int n = 4096) {
  std::vector<CurvatureSample> out;
  double dt = 2 * kPi / n;
  for (int i = 0; i < n; ++i) {
    double t = dt * i;
    Vec2 d = from_angle(t);
    CurvatureSample c;
    c.normal = d;
    double rho;
    if (body.is<Ball>()) {
      const Ball& b = body.as<Ball>();
      rho = b.radius;
      c.x = to_vec2(b.center) + d * b.radius;
    } else if (body.is<Ellipse>()) {
      const Ellipse& e = body.as<Ellipse>();
      Vec2 e1 = from_angle(e.angle), e2 = perp(e1);
      double c1 = dot(d, e1), c2 = dot(d, e2);
      double h0 = std::sqrt(e.a * e.a * c1 * c1 + e.b * e.b * c2 * c2);
      rho = e.a * e.a * e.b * e.b / (h0 * h0 * h0);
      c.x = e.center + e1 * (e.a * e.a * c1 / h0) + e2 * (e.b * e.b * c2 / h0);
    } else if (body.is<FourierBody>()) {
      const FourierBody& f = body.as<FourierBody>();
      rho = f.rho(t);
      c.x = f.point(t);
    } else {
      fail(ErrorKind::Unsupported, "curvature samples need a smooth primitive");
    }
    c.kappa = 1.0 / rho;
    c.weight = rho * dt;
    out.push_back(c);
  }
  return out;
}

/// L_p affine surface area: integral over the boundary of
/// kappa^{p/(n+p)} / <x, N>^{n(p-1)/(n+p)}.  Smooth primitives use the
/// boundary parametrization by normal angle; polygons vanish (p > 0); other
/// representations go through the graph formula with u = e2.
inline double as_p_value(const ConvexBody& body, double p, const AsaOptions& opt = {}) {
  if (p == -2.0) fail(ErrorKind::PoleAtMinusN, "as_p has a pole at p = -n");
  if (p == 0 || std::isnan(p)) fail(ErrorKind::InvalidArgument, "as_p needs p != 0");
  if (body.dim != 2) fail(ErrorKind::Unsupported, "affine surface area is planar");
  if (piecewise_linear(body)) {
    if (p < 0) fail(ErrorKind::CurvatureAssumptionViolated, "polygons have no curvature for p < 0");
    return 0.0;
  }
  if (body.is<Ball>() || body.is<Ellipse>() || body.is<FourierBody>()) {
    if (!(inradius_about_origin(body) > 0)) fail(ErrorKind::NotABody, "affine surface area needs an origin-interior body");
    double s = 0;
    for (const auto& c : curvature_samples(body)) {
      double h = dot(c.x, c.normal);
      s += std::pow(c.kappa, p / (2 + p)) * std::pow(h, -2.0 * (p - 1) / (2 + p)) * c.weight;
    }
    return s;
  }
  Frame fr = body.is<Slab>() ? body.as<Slab>().frame : Frame::planar({0, 1});
  return asa_phi(body, PhiSpec::power(p), fr, opt);
}

inline double asa_p(const ConvexBody& body, double p, const AsaOptions& opt = {}) { return as_p_value(body, p, opt); }

// ----------------------------------------------------- mixed surface areas

struct DerivativeSchedule {
  std::vector<double> eps_list = default_eps();
  bool extrapolate = true;

  static std::vector<double> default_eps() {
    std::vector<double> e;
    for (int k = 0; k <= 6; ++k) e.push_back(1e-2 * std::ldexp(1.0, -k));
    return e;
  }
  void validate() const {
    if (eps_list.size() < 2) fail(ErrorKind::InvalidArgument, "schedule needs two step sizes");
    for (size_t i = 0; i < eps_list.size(); ++i) {
      if (!(eps_list[i] > 0)) fail(ErrorKind::InvalidArgument, "step sizes must be positive");
      if (i && !(eps_list[i] < eps_list[i - 1])) fail(ErrorKind::InvalidArgument, "step sizes must decrease");
    }
  }
};

struct DerivativeEstimate {
  double value = 0;
  double error = 0;                 ///< |last - previous| of the (extrapolated) sequence
  std::vector<double> eps;          ///< schedule
  std::vector<double> quotients;    ///< (F(eps) - F0) / eps
  std::vector<double> estimates;    ///< extrapolated sequence (or quotients)
};

/// Forward difference quotients with first-order Richardson extrapolation
/// R_k = (e_k Q_{k+1} - e_{k+1} Q_k) / (e_k - e_{k+1}).
template <class F>
DerivativeEstimate one_sided_derivative(const F& fn, double f0, const DerivativeSchedule& sched) {
  sched.validate();
  DerivativeEstimate d;
  d.eps = sched.eps_list;
  for (double e : d.eps) d.quotients.push_back((fn(e) - f0) / e);
  if (sched.extrapolate) {
    for (size_t k = 0; k + 1 < d.eps.size(); ++k) {
      double e0 = d.eps[k], e1 = d.eps[k + 1];
      d.estimates.push_back((e0 * d.quotients[k + 1] - e1 * d.quotients[k]) / (e0 - e1));
    }
  } else {
    d.estimates = d.quotients;
  }
  size_t m = d.estimates.size();
  d.value = d.estimates.back();
  d.error = m >= 2 ? std::fabs(d.estimates[m - 1] - d.estimates[m - 2]) : INFINITY;
  if (!std::isfinite(d.value)) fail(ErrorKind::NonConvergent, "difference quotients are not finite");
  if (m >= 3) {
    double prev = std::fabs(d.estimates[m - 2] - d.estimates[m - 3]);
    double floor = 1e-6 * std::max(1.0, std::fabs(d.value));
    if (d.error > floor && d.error > 1.5 * prev)
      fail(ErrorKind::NonConvergent, "difference quotients diverge as eps -> 0");
  }
  return d;
}

/// Options for fiber mixed areas: a fixed uniform direction set, so the
/// discretization bias varies smoothly in eps and cancels in the quotients.
inline FiberOptions mixed_fiber_options() {
  FiberOptions o;
  o.directions = 4096;
  o.refine_tol = 0;
  return o;
}

/// S_p^fib(K1, K2) = d/de vol(K1 [+]_p e o_p K2) at e = 0+.
inline DerivativeEstimate mixed_fiber_surface(const ConvexBody& k1, const ConvexBody& k2, double p, const Frame& frame,
                                              const DerivativeSchedule& sched = {},
                                              const FiberOptions& opt = mixed_fiber_options()) {
  if (!(p >= 1)) fail(ErrorKind::InvalidArgument, "fiber mixed surface area needs p >= 1");
  std::vector<VecN> dirs;
  std::vector<double> vals;
  for (auto d : direction_grid(opt.directions)) {
    dirs.push_back(to_vecn(d));
    vals.push_back(support(k1, d));
  }
  double f0 = volume(make_support_table(dirs, vals));
  auto F = [&](double e) { return volume(lp_fiber_combine(k1, k2, FiberSpec{p, 1.0, e, frame}, opt)); };
  return one_sided_derivative(F, f0, sched);
}

/// S_{u,p}^chord(K1, K2) = d/de vol(K1 (+)_p e (.) K2) at e = 0+.
inline DerivativeEstimate mixed_chord_surface(const ConvexBody& k1, const ConvexBody& k2, double p, const Frame& frame,
                                              const DerivativeSchedule& sched = {}) {
  if (p == 0 || std::isnan(p) || std::isinf(p)) fail(ErrorKind::InvalidArgument, "chord mixed area needs finite p != 0");
  Interval p1 = project(k1, frame), p2 = project(k2, frame);
  check_equal_projections(p1, p2, std::max({p1.length(), 2 * circumradius(k1), 2 * circumradius(k2)}));
  // Baseline on the grid the combination uses, so grid bias cancels.
  Slab base = lp_chord_combine(k1, k2, PMeanSpec{1.0, 1.0, 1.0}, frame);
  GraphValues v = graph_sample(k1, frame, base.grid.x);
  std::vector<double> l(base.grid.size());
  for (size_t j = 0; j < l.size(); ++j) l[j] = std::max(0.0, v.f[j] + v.g[j]);
  double f0 = base.grid.integrate(l);
  auto F = [&](double e) { return volume(as_body(lp_chord_combine(k1, k2, PMeanSpec{p, 1.0, e}, frame))); };
  return one_sided_derivative(F, f0, sched);
}

/// Closed form (1/p) * integral of l1^{1-p} l2^p over the common projection.
inline double mixed_chord_surface_exact(const ConvexBody& k1, const ConvexBody& k2, double p, const Frame& frame) {
  Slab s = lp_chord_combine(k1, k2, PMeanSpec{1.0, 1.0, 1.0}, frame);
  GraphValues v1 = graph_sample(k1, frame, s.grid.x), v2 = graph_sample(k2, frame, s.grid.x);
  std::vector<double> I(s.grid.size());
  for (size_t j = 0; j < I.size(); ++j) {
    double l1 = std::max(0.0, v1.f[j] + v1.g[j]), l2 = std::max(0.0, v2.f[j] + v2.g[j]);
    I[j] = l1 > 0 ? std::pow(l1, 1 - p) * std::pow(l2, p) / p : 0.0;
  }
  return s.grid.integrate(I);
}

/// S_{u,p}^graph(K1, K2) = d/de as_p(K1 <>+ e <> K2) at e = 0+.
inline DerivativeEstimate mixed_graph_asa(const ConvexBody& k1, const ConvexBody& k2, double p, const Frame& frame,
                                          const DerivativeSchedule& sched = {}, const AsaOptions& opt = {}) {
  if (!((p > 0 && p < 1) || (p > -2 && p < 0))) fail(ErrorKind::InvalidArgument, "graph mixed area needs p in (0,1) or (-n,0)");
  Slab s1 = graph_decompose(k1, frame);
  Slab s2 = graph_decompose(k2, frame);
  double diam = 2 * std::max(slab_scale(s1), slab_scale(s2));
  check_equal_projections({s1.grid.lo(), s1.grid.hi()}, {s2.grid.lo(), s2.grid.hi()}, diam);
  PhiSpec phi = PhiSpec::power(p);
  double f0 = asa_phi(graph_combine(s1, s2, 1.0, 0.0), phi, opt);
  auto F = [&](double e) { return asa_phi(graph_combine(s1, s2, 1.0, e), phi, opt); };
  return one_sided_derivative(F, f0, sched);
}

// ------------------------------------------------ Minkowski determinant

/// det(aA + bB)^{1/m} - (a+b)^{k/m - 1} (a det(A)^{1/m} + b det(B)^{1/m}).
inline double minkowski_det_slack(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double a, double b, int m) {
  long k = A.rows();
  if (A.cols() != k || B.rows() != k || B.cols() != k) fail(ErrorKind::InvalidArgument, "matrices must be square and equal size");
  if (m < k) fail(ErrorKind::InvalidArgument, "m must be at least the matrix size");
  if (!(a >= 0 && b >= 0) || a + b <= 0) fail(ErrorKind::NonpositiveScale, "weights must be nonnegative, not both zero");
  auto check_psd = [](const Eigen::MatrixXd& M) {
    if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, M.cwiseAbs().maxCoeff()))
      fail(ErrorKind::NotPSD, "matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff()))
      fail(ErrorKind::NotPSD, "matrix has a negative eigenvalue");
  };
  check_psd(A);
  check_psd(B);
  // det^{1/m} from the spectrum; eigenvalues below the numerical rank
  // threshold count as zero so that singular inputs do not produce noise
  // amplified by the fractional power.
  auto root = [m](const Eigen::MatrixXd& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (M + M.transpose()), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    double cut = 1e-12 * std::max(1e-300, ev.cwiseAbs().maxCoeff());
    double r = 1.0;
    for (long i = 0; i < ev.size(); ++i) r *= ev[i] > cut ? std::pow(ev[i], 1.0 / m) : 0.0;
    return r;
  };
  double lhs = root(a * A + b * B);
  double rhs = std::pow(a + b, static_cast<double>(k) / m - 1.0) * (a * root(A) + b * root(B));
  return lhs - rhs;
}

inline bool minkowski_det_check(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, double a, double b, int m) {
  return minkowski_det_slack(A, B, a, b, m) >= -1e-12;
}

}  // namespace steinerlab
