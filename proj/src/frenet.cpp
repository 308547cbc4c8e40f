#include "trajcost/frenet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace trajcost {

FrenetFrame::FrenetFrame(const BasePath& path, double ds)
    : base_(resample_by_arclength(path, ds)) {
  const auto& v = base_.vertices();
  const std::size_t n = v.size();
  tangent_.resize(n);
  normal_.resize(n);
  tangent_[0] = normalized(v[1] - v[0]);
  tangent_[n - 1] = normalized(v[n - 1] - v[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    tangent_[i] = normalized(v[i + 1] - v[i - 1]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    normal_[i] = perp(tangent_[i]);
  }
}

Vec2 FrenetFrame::interp_tangent(std::size_t seg, double u) const {
  return normalized(lerp(tangent_[seg], tangent_[seg + 1], u));
}

Vec2 FrenetFrame::point_at(std::size_t seg, double u) const {
  return lerp(base_.vertices()[seg], base_.vertices()[seg + 1], u);
}

double FrenetFrame::heading_at(double s) const {
  const auto& cs = base_.cumulative_arclength();
  if (s < 0.0 || s > total_length()) {
    throw std::domain_error("heading_at: s outside path domain");
  }
  const auto it = std::upper_bound(cs.begin(), cs.end(), s);
  std::size_t seg = it == cs.begin() ? 0 : (it - cs.begin()) - 1;
  seg = std::min(seg, cs.size() - 2);
  const double u = (s - cs[seg]) / (cs[seg + 1] - cs[seg]);
  const Vec2 t = interp_tangent(seg, u);
  return std::atan2(t.y, t.x);
}

FrenetPoint FrenetFrame::to_frenet(Vec2 point) const {
  const auto& v = base_.vertices();
  const auto& cs = base_.cumulative_arclength();
  const std::size_t n = v.size();

  // g(s) = (p - q(s)) . t(s) is continuous along the path; projection
  // feet are its roots. Scan for sign changes per segment and refine by
  // bisection, then keep the closest foot (smallest s on ties).
  auto g_at = [&](std::size_t i) { return dot(point - v[i], tangent_[i]); };
  auto g_seg = [&](std::size_t seg, double u) {
    return dot(point - point_at(seg, u), interp_tangent(seg, u));
  };

  bool found = false;
  double best_dist = std::numeric_limits<double>::infinity();
  FrenetPoint best;

  double g_prev = g_at(0);
  for (std::size_t seg = 0; seg + 1 < n; ++seg) {
    const double g_next = g_at(seg + 1);
    const bool bracket = (g_prev > 0.0 && g_next <= 0.0) ||
                         (g_prev <= 0.0 && g_next > 0.0) || g_prev == 0.0;
    if (bracket) {
      double lo = 0.0, hi = 1.0;
      double glo = g_prev;
      if (glo == 0.0) {
        hi = 0.0;
      } else {
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double gm = g_seg(seg, mid);
          if ((gm > 0.0) == (glo > 0.0)) {
            lo = mid;
            glo = gm;
          } else {
            hi = mid;
          }
        }
      }
      const double u = 0.5 * (lo + hi);
      const Vec2 foot = point_at(seg, u);
      const double dist = distance(point, foot);
      if (dist < best_dist - 1e-12) {
        best_dist = dist;
        const Vec2 nrm = perp(interp_tangent(seg, u));
        best.s = cs[seg] + u * (cs[seg + 1] - cs[seg]);
        best.d = dot(point - foot, nrm);
        found = true;
      }
    }
    g_prev = g_next;
  }

  if (!found) {
    // No interior root: the point projects beyond one of the path ends.
    if (g_at(0) < 0.0) {
      throw std::domain_error("to_frenet: point projects behind path start");
    }
    throw std::domain_error("to_frenet: point projects beyond path end");
  }
  return best;
}

Vec2 FrenetFrame::from_frenet(double s, double d) const {
  const auto& cs = base_.cumulative_arclength();
  if (s < 0.0 || s > total_length()) {
    throw std::domain_error("from_frenet: s = " + std::to_string(s) +
                            " outside [0, " + std::to_string(total_length()) +
                            "]");
  }
  const auto it = std::upper_bound(cs.begin(), cs.end(), s);
  std::size_t seg = it == cs.begin() ? 0 : (it - cs.begin()) - 1;
  seg = std::min(seg, cs.size() - 2);
  const double u = (s - cs[seg]) / (cs[seg + 1] - cs[seg]);
  return point_at(seg, u) + d * perp(interp_tangent(seg, u));
}

QuinticPolynomial::QuinticPolynomial(double p0, double v0, double a0,
                                     double p1, double v1, double a1,
                                     double T) {
  if (!(T > 0.0)) {
    throw std::invalid_argument("quintic: horizon must be positive");
  }
  c_[0] = p0;
  c_[1] = v0;
  c_[2] = 0.5 * a0;
  const double h = p1 - p0 - v0 * T - 0.5 * a0 * T * T;
  const double T2 = T * T, T3 = T2 * T, T4 = T3 * T, T5 = T4 * T;
  c_[3] = (20.0 * h - (8.0 * v1 + 12.0 * v0) * T - (3.0 * a0 - a1) * T2) /
          (2.0 * T3);
  c_[4] = (-30.0 * h + (14.0 * v1 + 16.0 * v0) * T + (3.0 * a0 - 2.0 * a1) * T2) /
          (2.0 * T4);
  c_[5] = (12.0 * h - 6.0 * (v1 + v0) * T + (a1 - a0) * T2) / (2.0 * T5);
}

double QuinticPolynomial::value(double t) const {
  return c_[0] + t * (c_[1] + t * (c_[2] + t * (c_[3] + t * (c_[4] + t * c_[5]))));
}

double QuinticPolynomial::first_derivative(double t) const {
  return c_[1] +
         t * (2.0 * c_[2] +
              t * (3.0 * c_[3] + t * (4.0 * c_[4] + t * 5.0 * c_[5])));
}

double QuinticPolynomial::second_derivative(double t) const {
  return 2.0 * c_[2] +
         t * (6.0 * c_[3] + t * (12.0 * c_[4] + t * 20.0 * c_[5]));
}

double QuinticPolynomial::third_derivative(double t) const {
  return 6.0 * c_[3] + t * (24.0 * c_[4] + t * 60.0 * c_[5]);
}

std::vector<Trajectory> generate_candidates(const FrenetFrame& frame,
                                            const CandidateStart& start,
                                            const CandidateConfig& config) {
  if (config.lateral_offsets.empty()) {
    throw std::invalid_argument("generate_candidates: no lateral offsets");
  }
  if (!(config.horizon > 0.0) || !(config.sample_spacing > 0.0) ||
      !(config.speed > 0.0)) {
    throw std::invalid_argument(
        "generate_candidates: horizon, spacing and speed must be positive");
  }
  if (start.s < 0.0 || start.s + config.horizon > frame.total_length()) {
    throw std::invalid_argument(
        "generate_candidates: horizon exceeds base path length");
  }

  const double heading_err =
      angle_diff(start.heading, frame.heading_at(start.s));
  if (std::abs(heading_err) >= 0.5 * kPi) {
    throw std::invalid_argument(
        "generate_candidates: start heading deviates >= 90 deg from path");
  }
  const double d_slope = std::tan(heading_err);

  const std::size_t steps = std::max<std::size_t>(
      3, static_cast<std::size_t>(std::lround(config.horizon / config.sample_spacing)));
  const std::size_t n = steps + 1;  // >= 4 samples for derive_kinematics

  std::vector<Trajectory> candidates;
  candidates.reserve(config.lateral_offsets.size());
  for (double target : config.lateral_offsets) {
    const QuinticPolynomial lateral(start.d, d_slope, 0.0, target, 0.0, 0.0,
                                    config.horizon);
    std::vector<TimedPoint> points(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double sigma = config.horizon * static_cast<double>(i) /
                           static_cast<double>(n - 1);
      const Vec2 p = frame.from_frenet(start.s + sigma, lateral.value(sigma));
      points[i] = {sigma / config.speed, p.x, p.y};
    }
    candidates.push_back(derive_kinematics(points));
  }
  return candidates;
}

}  // namespace trajcost
