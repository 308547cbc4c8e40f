#include "trajcost/trajectory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace trajcost {

namespace {

bool all_finite(const StateSample& s) {
  return std::isfinite(s.t) && std::isfinite(s.x) && std::isfinite(s.y) &&
         std::isfinite(s.v) && std::isfinite(s.a) && std::isfinite(s.a_tan) &&
         std::isfinite(s.jerk) && std::isfinite(s.theta) &&
         std::isfinite(s.yaw_rate) && std::isfinite(s.delta) &&
         std::isfinite(s.delta_rate);
}

// Three-point Lagrange first derivative at the middle node of a
// possibly non-uniform stencil (second-order accurate).
double central_first(double fm, double f0, double fp, double h1, double h2) {
  return (fp * h1 * h1 - fm * h2 * h2 + f0 * (h2 * h2 - h1 * h1)) /
         (h1 * h2 * (h1 + h2));
}

// Three-point second derivative at the middle node.
double central_second(double fm, double f0, double fp, double h1, double h2) {
  return 2.0 * (fm * h2 - f0 * (h1 + h2) + fp * h1) / (h1 * h2 * (h1 + h2));
}

// d/dt of a per-sample series by central differences, one-sided at the ends.
std::vector<double> differentiate(const std::vector<double>& f,
                                  const std::vector<double>& t) {
  const std::size_t n = f.size();
  std::vector<double> df(n);
  df[0] = (f[1] - f[0]) / (t[1] - t[0]);
  df[n - 1] = (f[n - 1] - f[n - 2]) / (t[n - 1] - t[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    df[i] = central_first(f[i - 1], f[i], f[i + 1], t[i] - t[i - 1],
                          t[i + 1] - t[i]);
  }
  return df;
}

// Same as differentiate() but the series is an angle; increments are
// wrapped so the derivative is insensitive to the +-pi seam.
std::vector<double> differentiate_angle(const std::vector<double>& f,
                                        const std::vector<double>& t) {
  const std::size_t n = f.size();
  std::vector<double> df(n);
  df[0] = angle_diff(f[1], f[0]) / (t[1] - t[0]);
  df[n - 1] = angle_diff(f[n - 1], f[n - 2]) / (t[n - 1] - t[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    df[i] = angle_diff(f[i + 1], f[i - 1]) / (t[i + 1] - t[i - 1]);
  }
  return df;
}

}  // namespace

Trajectory::Trajectory(std::vector<StateSample> samples)
    : samples_(std::move(samples)) {
  if (samples_.size() < 2) {
    throw std::invalid_argument("trajectory needs at least 2 samples");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    StateSample& s = samples_[i];
    if (!all_finite(s)) {
      throw std::invalid_argument("trajectory sample " + std::to_string(i) +
                                  " has non-finite fields");
    }
    if (s.v < 0.0) {
      throw std::invalid_argument("trajectory sample " + std::to_string(i) +
                                  " has negative speed");
    }
    if (i > 0 && s.t <= samples_[i - 1].t) {
      throw std::invalid_argument(
          "trajectory timestamps must be strictly increasing (sample " +
          std::to_string(i) + ")");
    }
    s.theta = wrap_angle(s.theta);
  }
}

BasePath::BasePath(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) {
    throw std::invalid_argument("base path needs at least 2 vertices");
  }
  arclength_.resize(vertices_.size());
  arclength_[0] = 0.0;
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    if (!std::isfinite(vertices_[i].x) || !std::isfinite(vertices_[i].y)) {
      throw std::invalid_argument("base path vertex " + std::to_string(i) +
                                  " is non-finite");
    }
    const double seg = distance(vertices_[i], vertices_[i - 1]);
    if (seg <= 0.0) {
      throw std::invalid_argument(
          "base path has coincident consecutive vertices at index " +
          std::to_string(i));
    }
    arclength_[i] = arclength_[i - 1] + seg;
  }
}

Trajectory derive_kinematics(const std::vector<TimedPoint>& points) {
  const std::size_t n = points.size();
  if (n < 4) {
    throw std::invalid_argument(
        "derive_kinematics needs at least 4 timed points, got " +
        std::to_string(n));
  }
  std::vector<double> t(n), x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = points[i].t;
    x[i] = points[i].x;
    y[i] = points[i].y;
    if (i > 0 && t[i] <= t[i - 1]) {
      throw std::invalid_argument(
          "derive_kinematics: timestamps must be strictly increasing "
          "(point " +
          std::to_string(i) + ")");
    }
  }

  const std::vector<double> vx = differentiate(x, t);
  const std::vector<double> vy = differentiate(y, t);
  const std::vector<double> ax = differentiate(vx, t);
  const std::vector<double> ay = differentiate(vy, t);

  std::vector<StateSample> samples(n);
  std::vector<double> speed(n), amag(n), theta(n);
  for (std::size_t i = 0; i < n; ++i) {
    speed[i] = std::hypot(vx[i], vy[i]);
    amag[i] = std::hypot(ax[i], ay[i]);
    theta[i] = speed[i] > 0.0 ? std::atan2(vy[i], vx[i]) : 0.0;
  }
  const std::vector<double> jerk = differentiate(amag, t);
  const std::vector<double> yaw_rate = differentiate_angle(theta, t);

  for (std::size_t i = 0; i < n; ++i) {
    StateSample& s = samples[i];
    s.t = t[i];
    s.x = x[i];
    s.y = y[i];
    s.v = speed[i];
    s.a = amag[i];
    s.theta = theta[i];
    // Tangential component: projection of the acceleration vector onto
    // the heading direction.
    s.a_tan = ax[i] * std::cos(theta[i]) + ay[i] * std::sin(theta[i]);
    s.jerk = jerk[i];
    s.yaw_rate = yaw_rate[i];
  }
  return Trajectory(std::move(samples));
}

std::vector<double> pointwise_curvature(const Trajectory& trajectory) {
  const auto& s = trajectory.samples();
  const std::size_t n = s.size();
  if (n < 3) {
    throw std::invalid_argument("pointwise_curvature needs at least 3 samples");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (distance(s[i].position(), s[i - 1].position()) <= 0.0) {
      throw std::invalid_argument(
          "pointwise_curvature: coincident consecutive points at sample " +
          std::to_string(i));
    }
  }
  std::vector<double> kappa(n);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = s[i].t - s[i - 1].t;
    const double h2 = s[i + 1].t - s[i].t;
    const double xp = central_first(s[i - 1].x, s[i].x, s[i + 1].x, h1, h2);
    const double yp = central_first(s[i - 1].y, s[i].y, s[i + 1].y, h1, h2);
    const double xpp = central_second(s[i - 1].x, s[i].x, s[i + 1].x, h1, h2);
    const double ypp = central_second(s[i - 1].y, s[i].y, s[i + 1].y, h1, h2);
    const double speed_sq = xp * xp + yp * yp;
    if (speed_sq <= 0.0) {
      throw std::invalid_argument(
          "pointwise_curvature: degenerate spacing at sample " +
          std::to_string(i));
    }
    kappa[i] = (xp * ypp - xpp * yp) / std::pow(speed_sq, 1.5);
  }
  kappa[0] = kappa[1];
  kappa[n - 1] = kappa[n - 2];
  return kappa;
}

BasePath resample_by_arclength(const BasePath& path, double ds) {
  if (!(ds > 0.0)) {
    throw std::invalid_argument("resample_by_arclength: ds must be positive");
  }
  if (ds > path.total_length()) {
    throw std::invalid_argument(
        "resample_by_arclength: ds exceeds total path length");
  }
  const auto& v = path.vertices();
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(path.total_length() / ds) + 2);
  out.push_back(v.front());

  // March in equal straight-line chords of length ds: from the last
  // emitted vertex, find the first point along the remaining polyline at
  // distance exactly ds. Marching in chords (instead of accumulated arc
  // length) makes the operation exactly idempotent: re-resampling walks
  // the straight chords and lands back on the same vertices.
  std::size_t seg = 0;   // current segment index
  double u = 0.0;        // parameter within segment [0, 1)
  while (seg + 1 < v.size()) {
    const Vec2 anchor = out.back();
    bool emitted = false;
    std::size_t j = seg;
    double u0 = u;
    for (; j + 1 < v.size(); ++j, u0 = 0.0) {
      const Vec2 a = v[j];
      const Vec2 e = v[j + 1] - a;
      const Vec2 d0 = a - anchor;
      // |d0 + u*e|^2 = ds^2, smallest root in (u0, 1].
      const double A = dot(e, e);
      const double B = dot(d0, e);
      const double C = dot(d0, d0) - ds * ds;
      const double disc = B * B - A * C;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        for (double root : {(-B - sq) / A, (-B + sq) / A}) {
          // Tolerate roots a hair past the segment end so a crossing that
          // lands exactly on a vertex is not lost to rounding.
          if (root > u0 + 1e-15 && root <= 1.0 + 1e-12) {
            const double r = std::min(root, 1.0);
            out.push_back(a + r * e);
            seg = j;
            u = r;
            emitted = true;
            break;
          }
        }
        if (emitted) break;
      }
    }
    if (!emitted) break;  // rest of the path is closer than ds
  }

  // Preserve the final endpoint exactly.
  const double tail = distance(out.back(), v.back());
  if (tail < 1e-9) {
    out.back() = v.back();
  } else {
    out.push_back(v.back());
  }
  return BasePath(std::move(out));
}

}  // namespace trajcost
