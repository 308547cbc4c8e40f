#pragma once

#include <functional>
#include <vector>

#include "trajcost/context.hpp"
#include "trajcost/scenario.hpp"

namespace trajcost::test {

/// n samples with uniform dt, fields filled by the callback.
inline Trajectory make_trajectory(
    int n, double dt, const std::function<void(int, StateSample&)>& fill,
    double t0 = 0.0) {
  std::vector<StateSample> samples(n);
  for (int i = 0; i < n; ++i) {
    samples[i].t = t0 + i * dt;
    samples[i].x = static_cast<double>(i);  // distinct positions by default
    fill(i, samples[i]);
  }
  return Trajectory(std::move(samples));
}

/// Long straight scenario along +x with constant desired profiles.
inline Scenario make_straight_scenario(
    std::vector<ObstacleShape> obstacles = {}, double d_influence = 4.0,
    double v_des = 8.0, double theta_des = 0.0) {
  ScenarioParams params;
  params.base_path = {{-10.0, 0.0}, {110.0, 0.0}};
  params.obstacles.obstacles = std::move(obstacles);
  params.obstacles.d_influence = d_influence;
  params.speed_limit = 20.0;
  params.goal.shape = Disc{{100.0, 0.0}, 2.0};
  params.v_des = PiecewiseLinearProfile({{-10.0, v_des}, {110.0, v_des}});
  params.theta_des =
      PiecewiseLinearProfile({{-10.0, theta_des}, {110.0, theta_des}});
  params.frenet_spacing = 1.0;
  return Scenario(std::move(params));
}

}  // namespace trajcost::test
