#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "trajcost/frenet.hpp"
#include "trajcost/obstacles.hpp"
#include "trajcost/trajectory.hpp"

namespace trajcost {

/// Piecewise-linear function value(s), clamped at both ends.
/// Empty profiles are allowed and report unavailability.
class PiecewiseLinearProfile {
 public:
  PiecewiseLinearProfile() = default;
  /// Knots must have strictly increasing abscissae.
  explicit PiecewiseLinearProfile(std::vector<std::pair<double, double>> knots);

  bool empty() const { return knots_.empty(); }
  double operator()(double s) const;
  const std::vector<std::pair<double, double>>& knots() const { return knots_; }

 private:
  std::vector<std::pair<double, double>> knots_;
};

/// Accepted terminal set: disc or convex polygon, optional time window.
struct GoalRegion {
  ObstacleShape shape = Disc{{0.0, 0.0}, 1.0};
  std::optional<std::pair<double, double>> time_window;

  bool contains_position(Vec2 p) const { return signed_clearance(p, shape) <= 0.0; }
  /// Distance from a point to the region, 0 inside.
  double distance_to(Vec2 p) const;
};

/// Leading vehicle described scenario-side as arc-length position and
/// speed over time, plus the gap-policy constants.
struct LeadingVehicleTrace {
  PiecewiseLinearProfile s_of_t;  // arc length along base path [m] vs t
  PiecewiseLinearProfile v_of_t;  // speed [m/s] vs t
  double d_l_min = 5.0;           // minimum desired gap [m]
  double k_gain = 1.14;           // gap gain [s]
  double a_maxdec = 8.0;          // max deceleration magnitude [m/s^2]
  double t_response = 0.6;        // planner response time [s]
};

struct ScenarioParams {
  std::vector<Vec2> base_path;
  ObstacleSet obstacles;
  double speed_limit = 0.0;
  GoalRegion goal;
  PiecewiseLinearProfile v_des;      // desired speed per arc length
  PiecewiseLinearProfile theta_des;  // desired heading per arc length
  std::optional<LeadingVehicleTrace> leading_vehicle;
  double ego_radius = 0.0;      // disc footprint radius, 0 = point ego
  double frenet_spacing = 0.5;  // resampling ds of the projection frame
};

/// Immutable planning scenario. Owns the Frenet frame built over the
/// base path; all projections (lane-center offsets, profile lookups)
/// go through it.
class Scenario {
 public:
  explicit Scenario(ScenarioParams params);

  const BasePath& base_path() const { return path_; }
  const FrenetFrame& frame() const { return frame_; }
  const ObstacleSet& obstacles() const { return params_.obstacles; }
  double speed_limit() const { return params_.speed_limit; }
  const GoalRegion& goal() const { return params_.goal; }
  const PiecewiseLinearProfile& v_des() const { return params_.v_des; }
  const PiecewiseLinearProfile& theta_des() const { return params_.theta_des; }
  const std::optional<LeadingVehicleTrace>& leading_vehicle() const {
    return params_.leading_vehicle;
  }
  double ego_radius() const { return params_.ego_radius; }
  double frenet_spacing() const { return params_.frenet_spacing; }

 private:
  ScenarioParams params_;
  BasePath path_;
  FrenetFrame frame_;
};

}  // namespace trajcost
