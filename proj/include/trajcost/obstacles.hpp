#pragma once

#include <variant>
#include <vector>

#include "trajcost/geometry.hpp"

namespace trajcost {

struct Disc {
  Vec2 center;
  double radius = 0.0;
};

/// Convex polygon, vertices in counter-clockwise order.
struct ConvexPolygon {
  std::vector<Vec2> vertices;
};

using ObstacleShape = std::variant<Disc, ConvexPolygon>;

/// Signed clearance from a point to a shape boundary: positive outside,
/// negative inside (penetration depth), zero on the boundary.
double signed_clearance(Vec2 point, const ObstacleShape& shape);

bool contains(const ObstacleShape& shape, Vec2 point);

/// Throws std::invalid_argument for degenerate shapes (non-positive disc
/// radius, polygons with < 3 vertices or non-positive area).
void validate_shape(const ObstacleShape& shape);

/// Static obstacles plus the influence radius of the proximity penalty.
struct ObstacleSet {
  std::vector<ObstacleShape> obstacles;
  double d_influence = 1.0;  // [m], must be > 0
};

/// Smallest signed clearance from a point to any obstacle in the set
/// (+infinity when the set is empty).
double min_clearance(Vec2 point, const ObstacleSet& set);

void validate(const ObstacleSet& set);

}  // namespace trajcost
