#pragma once

#include <vector>

#include "trajcost/trajectory.hpp"

namespace trajcost {

/// Curvilinear coordinates relative to a base path: s = arc length along
/// the path, d = signed lateral offset (positive to the left of travel).
struct FrenetPoint {
  double s = 0.0;
  double d = 0.0;
};

/// Frenet frame over an arc-length resampled base path with per-vertex
/// unit tangents (central differences) and left normals. Transforms in
/// both directions share the same interpolated frame, so round trips are
/// exact up to the projection solver tolerance.
class FrenetFrame {
 public:
  FrenetFrame(const BasePath& path, double ds);

  const BasePath& base() const { return base_; }
  double total_length() const { return base_.total_length(); }
  const std::vector<Vec2>& tangents() const { return tangent_; }
  const std::vector<Vec2>& normals() const { return normal_; }

  /// Heading of the base path at arc length s.
  double heading_at(double s) const;

  /// Projects a point into curvilinear coordinates. The projection foot
  /// is the closest point where (p - base(s)) is orthogonal to the
  /// interpolated tangent; ambiguous projections resolve to the smaller
  /// s. Throws std::domain_error when the point projects beyond either
  /// path end.
  FrenetPoint to_frenet(Vec2 point) const;

  /// Inverse transform base(s) + d * normal(s).
  /// Throws std::domain_error when s lies outside [0, total_length()].
  Vec2 from_frenet(double s, double d) const;

 private:
  Vec2 interp_tangent(std::size_t seg, double u) const;
  Vec2 point_at(std::size_t seg, double u) const;

  BasePath base_;
  std::vector<Vec2> tangent_;
  std::vector<Vec2> normal_;
};

/// Generation parameters for laterally offset candidates.
struct CandidateConfig {
  std::vector<double> lateral_offsets;  // terminal d targets [m]
  double horizon = 0.0;                 // planning distance along s [m]
  double speed = 0.0;                   // progress speed along s [m/s]
  double sample_spacing = 0.5;          // ds between samples [m]
};

/// Start state of candidate generation in curvilinear coordinates.
struct CandidateStart {
  double s = 0.0;
  double d = 0.0;
  double heading = 0.0;  // absolute heading [rad]
};

/// Quintic polynomial fixed by position/velocity/acceleration at both
/// ends, evaluated over [0, T].
class QuinticPolynomial {
 public:
  QuinticPolynomial(double p0, double v0, double a0, double p1, double v1,
                    double a1, double T);

  double value(double t) const;
  double first_derivative(double t) const;
  double second_derivative(double t) const;
  double third_derivative(double t) const;

 private:
  double c_[6];
};

/// Generates one candidate per lateral offset: a quintic lateral profile
/// in s from (d0, tan(heading error), 0) to (offset, 0, 0) over the
/// horizon, converted to Euclidean space, time-stamped at the constant
/// progress speed and finished with derive_kinematics. All candidates
/// share the same t0 and tf.
std::vector<Trajectory> generate_candidates(const FrenetFrame& frame,
                                            const CandidateStart& start,
                                            const CandidateConfig& config);

}  // namespace trajcost
