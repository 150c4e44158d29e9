#pragma once

#include <cmath>
#include <vector>

#include "steinerlab/errors.hpp"
#include "steinerlab/vec.hpp"

namespace steinerlab {

/// Splitting of the ambient space.  For graph and chord operations `u` is the
/// symmetrization direction and `basis` spans u-perp.  For fiber operations the
/// fiber subspace L is span{u} when fiber_dim == 1 and span(basis) when
/// fiber_dim == dim - 1; the complementary subspace M is the other one.
struct Frame {
  VecN u;
  std::vector<VecN> basis;
  int fiber_dim = 1;
  int resolution = 2049;  ///< samples on the projection grid

  int dim() const { return static_cast<int>(u.size()); }
  Vec2 u2() const { return to_vec2(u); }
  Vec2 w2() const { return to_vec2(basis.at(0)); }

  /// Planar frame; u-perp is oriented as (u.y, -u.x) so that u = e2 gives e1.
  static Frame planar(Vec2 u, int resolution = 2049) {
    Vec2 w{u.y, -u.x};
    return planar(u, w, resolution);
  }
  static Frame planar(Vec2 u, Vec2 w, int resolution) {
    Frame f;
    f.u = to_vecn(u);
    f.basis = {to_vecn(w)};
    f.fiber_dim = 1;
    f.resolution = resolution;
    f.validate();
    return f;
  }
  /// Spatial frame with u and an orthonormal completion.
  static Frame spatial(const VecN& u, int fiber_dim = 1) {
    if (u.size() != 3) fail(ErrorKind::InvalidArgument, "spatial frame needs a 3-vector");
    VecN a = std::fabs(u[0]) < 0.9 ? VecN{1, 0, 0} : VecN{0, 1, 0};
    double d = dot(a, u);
    VecN b1{a[0] - d * u[0], a[1] - d * u[1], a[2] - d * u[2]};
    b1 = scaled(b1, 1.0 / norm(b1));
    VecN b2{u[1] * b1[2] - u[2] * b1[1], u[2] * b1[0] - u[0] * b1[2], u[0] * b1[1] - u[1] * b1[0]};
    Frame f;
    f.u = u;
    f.basis = {b1, b2};
    f.fiber_dim = fiber_dim;
    f.validate();
    return f;
  }

  void validate() const {
    int n = dim();
    if (n != 2 && n != 3) fail(ErrorKind::InvalidArgument, "frame dimension must be 2 or 3");
    if (std::fabs(norm(u) - 1.0) > 1e-12) fail(ErrorKind::InvalidArgument, "frame direction is not a unit vector");
    if (static_cast<int>(basis.size()) != n - 1) fail(ErrorKind::InvalidArgument, "basis must span u-perp");
    for (size_t i = 0; i < basis.size(); ++i) {
      if (static_cast<int>(basis[i].size()) != n) fail(ErrorKind::InvalidArgument, "basis vector dimension");
      if (std::fabs(dot(basis[i], u)) > 1e-12) fail(ErrorKind::InvalidArgument, "basis not orthogonal to u");
      for (size_t j = 0; j <= i; ++j) {
        double want = i == j ? 1.0 : 0.0;
        if (std::fabs(dot(basis[i], basis[j]) - want) > 1e-12)
          fail(ErrorKind::InvalidArgument, "basis not orthonormal");
      }
    }
    if (fiber_dim != 1 && fiber_dim != n - 1) fail(ErrorKind::InvalidArgument, "fiber dimension");
    if (resolution < 5) fail(ErrorKind::InvalidArgument, "grid resolution too small");
  }

  bool same_direction(const Frame& o, double tol = 1e-12) const {
    if (o.dim() != dim()) return false;
    for (int i = 0; i < dim(); ++i)
      if (std::fabs(u[i] - o.u[i]) > tol) return false;
    for (size_t k = 0; k < basis.size(); ++k)
      for (int i = 0; i < dim(); ++i)
        if (std::fabs(basis[k][i] - o.basis[k][i]) > tol) return false;
    return true;
  }
};

}  // namespace steinerlab
