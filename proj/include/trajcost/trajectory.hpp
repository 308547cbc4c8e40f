#pragma once

#include <cstddef>
#include <vector>

#include "trajcost/geometry.hpp"

namespace trajcost {

/// One time-stamped kinematic state of the ego vehicle. All SI units.
struct StateSample {
  double t = 0.0;           // time [s]
  double x = 0.0;           // position [m]
  double y = 0.0;           // position [m]
  double v = 0.0;           // speed (magnitude) [m/s], >= 0
  double a = 0.0;           // planar acceleration magnitude [m/s^2]
  double a_tan = 0.0;       // signed tangential acceleration [m/s^2]
  double jerk = 0.0;        // da/dt [m/s^3]
  double theta = 0.0;       // heading [rad], normalized to (-pi, pi]
  double yaw_rate = 0.0;    // dtheta/dt [rad/s]
  double delta = 0.0;       // steering angle [rad]
  double delta_rate = 0.0;  // steering rate [rad/s]

  Vec2 position() const { return {x, y}; }
};

/// Timed planar point, the raw input from which kinematics are derived.
struct TimedPoint {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
};

/// Ordered sequence of samples with strictly increasing timestamps.
/// Immutable after construction; the unit every cost function consumes.
class Trajectory {
 public:
  /// Validates: >= 2 samples, strictly increasing finite timestamps,
  /// all fields finite, v >= 0. Headings are normalized to (-pi, pi].
  /// Throws std::invalid_argument on violation.
  explicit Trajectory(std::vector<StateSample> samples);

  const std::vector<StateSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  const StateSample& operator[](std::size_t i) const { return samples_[i]; }
  const StateSample& front() const { return samples_.front(); }
  const StateSample& back() const { return samples_.back(); }
  double duration() const { return back().t - front().t; }

 private:
  std::vector<StateSample> samples_;
};

/// Polyline the candidate trajectories are generated around, with
/// cumulative arc length per vertex (chord-summed, starting at 0).
class BasePath {
 public:
  /// Requires >= 2 vertices, consecutive vertices distinct, all finite.
  explicit BasePath(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<double>& cumulative_arclength() const { return arclength_; }
  std::size_t size() const { return vertices_.size(); }
  double total_length() const { return arclength_.back(); }

 private:
  std::vector<Vec2> vertices_;
  std::vector<double> arclength_;
};

/// Fills v, a, a_tan, jerk, theta and yaw_rate from timed positions using
/// central finite differences (first-order one-sided at the endpoints).
/// delta and delta_rate are left at zero.
/// Requires >= 4 points with strictly increasing timestamps.
Trajectory derive_kinematics(const std::vector<TimedPoint>& points);

/// Signed curvature kappa_i = (x'y'' - x''y') / (x'^2 + y'^2)^(3/2) per
/// sample, derivatives taken with respect to time by finite differences.
/// Endpoints copy the nearest interior value. Requires >= 3 samples and
/// distinct consecutive positions.
std::vector<double> pointwise_curvature(const Trajectory& trajectory);

/// Resamples a polyline to (approximately) uniform spacing in arc length
/// by equal-chord marching: every output vertex is at straight-line
/// distance `ds` from the previous one, walking along the input polyline.
/// Endpoints are preserved exactly. Requires 0 < ds <= total length.
BasePath resample_by_arclength(const BasePath& path, double ds);

}  // namespace trajcost
