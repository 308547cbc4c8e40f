#include "trajcost/obstacles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace trajcost {

namespace {

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 e = b - a;
  const double len_sq = dot(e, e);
  if (len_sq <= 0.0) return distance(p, a);
  const double u = std::clamp(dot(p - a, e) / len_sq, 0.0, 1.0);
  return distance(p, a + u * e);
}

double boundary_distance(Vec2 p, const ConvexPolygon& poly) {
  double best = std::numeric_limits<double>::infinity();
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    best = std::min(best, segment_distance(p, v[i], v[(i + 1) % v.size()]));
  }
  return best;
}

bool polygon_contains(const ConvexPolygon& poly, Vec2 p) {
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2 a = v[i];
    const Vec2 b = v[(i + 1) % v.size()];
    if (cross(b - a, p - a) < 0.0) return false;
  }
  return true;
}

double polygon_area(const ConvexPolygon& poly) {
  double twice = 0.0;
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    twice += cross(v[i], v[(i + 1) % v.size()]);
  }
  return 0.5 * twice;
}

}  // namespace

double signed_clearance(Vec2 point, const ObstacleShape& shape) {
  if (const auto* disc = std::get_if<Disc>(&shape)) {
    return distance(point, disc->center) - disc->radius;
  }
  const auto& poly = std::get<ConvexPolygon>(shape);
  const double d = boundary_distance(point, poly);
  return polygon_contains(poly, point) ? -d : d;
}

bool contains(const ObstacleShape& shape, Vec2 point) {
  return signed_clearance(point, shape) <= 0.0;
}

void validate_shape(const ObstacleShape& shape) {
  if (const auto* disc = std::get_if<Disc>(&shape)) {
    if (!(disc->radius > 0.0) || !std::isfinite(disc->radius) ||
        !std::isfinite(disc->center.x) || !std::isfinite(disc->center.y)) {
      throw std::invalid_argument("degenerate disc obstacle");
    }
    return;
  }
  const auto& poly = std::get<ConvexPolygon>(shape);
  if (poly.vertices.size() < 3) {
    throw std::invalid_argument("polygon obstacle needs at least 3 vertices");
  }
  for (const Vec2& v : poly.vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw std::invalid_argument("polygon obstacle has non-finite vertex");
    }
  }
  if (!(polygon_area(poly) > 0.0)) {
    throw std::invalid_argument(
        "polygon obstacle must be counter-clockwise with positive area");
  }
}

double min_clearance(Vec2 point, const ObstacleSet& set) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& shape : set.obstacles) {
    best = std::min(best, signed_clearance(point, shape));
  }
  return best;
}

void validate(const ObstacleSet& set) {
  if (!(set.d_influence > 0.0)) {
    throw std::invalid_argument("obstacle set d_influence must be positive");
  }
  for (const auto& shape : set.obstacles) validate_shape(shape);
}

}  // namespace trajcost
