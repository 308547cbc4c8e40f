#pragma once

#include <cmath>

namespace trajcost {

inline constexpr double kPi = 3.14159265358979323846;

/// Planar point / vector, SI meters.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2 operator*(Vec2 v, double s) { return s * v; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

/// Rotation by +90 degrees (left normal of a tangent).
inline Vec2 perp(Vec2 v) { return {-v.y, v.x}; }

inline Vec2 normalized(Vec2 v) {
  double n = norm(v);
  return n > 0.0 ? Vec2{v.x / n, v.y / n} : Vec2{0.0, 0.0};
}

inline Vec2 lerp(Vec2 a, Vec2 b, double u) {
  return {a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)};
}

/// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::fmod(a + kPi, 2.0 * kPi);
  if (w <= 0.0) w += 2.0 * kPi;
  return w - kPi;
}

/// Shortest signed angular difference a - b, wrapped into (-pi, pi].
inline double angle_diff(double a, double b) { return wrap_angle(a - b); }

}  // namespace trajcost
