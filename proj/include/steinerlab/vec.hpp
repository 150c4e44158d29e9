#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace steinerlab {

inline constexpr double kPi = std::numbers::pi;

/// Planar point or vector.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
/// Counterclockwise rotation by 90 degrees.
constexpr Vec2 perp(Vec2 a) { return {-a.y, a.x}; }
inline Vec2 normalized(Vec2 a) {
  double n = norm(a);
  return n > 0 ? a / n : a;
}
inline Vec2 from_angle(double t) { return {std::cos(t), std::sin(t)}; }
/// Angle in [0, 2pi).
inline double angle_of(Vec2 a) {
  double t = std::atan2(a.y, a.x);
  return t < 0 ? t + 2 * kPi : t;
}

/// Dense vector used by the dimension-generic (n = 2, 3) entry points.
using VecN = std::vector<double>;

inline double dot(const VecN& a, const VecN& b) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}
inline double norm(const VecN& a) { return std::sqrt(dot(a, a)); }
inline VecN scaled(const VecN& a, double s) {
  VecN r(a);
  for (auto& v : r) v *= s;
  return r;
}
inline VecN added(const VecN& a, const VecN& b) {
  VecN r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}
inline Vec2 to_vec2(const VecN& a) { return {a.at(0), a.at(1)}; }
inline VecN to_vecn(Vec2 a) { return {a.x, a.y}; }

}  // namespace steinerlab
