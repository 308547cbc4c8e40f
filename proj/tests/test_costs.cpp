#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "trajcost/costs.hpp"
#include "trajcost/errors.hpp"

using namespace trajcost;
using trajcost::test::make_straight_scenario;
using trajcost::test::make_trajectory;

namespace {

EvaluationContext context_for(const Scenario& scenario) {
  EvaluationContext ctx;
  ctx.scenario = &scenario;
  return ctx;
}

}  // namespace

TEST_CASE("squared running costs on zero and constant integrands") {
  const Scenario scenario = make_straight_scenario();
  const EvaluationContext ctx = context_for(scenario);

  // 9 samples, dt = 0.25 -> duration exactly 2 s.
  const Trajectory zero =
      make_trajectory(9, 0.25, [](int, StateSample&) {});
  const Trajectory accel =
      make_trajectory(9, 0.25, [](int, StateSample& s) { s.a = 1.0; });

  CHECK(running_cost(CostId::A, zero, ctx) == 0.0);
  CHECK(running_cost(CostId::A, accel, ctx) == 2.0);  // trapezoid exact

  const Trajectory jerky =
      make_trajectory(9, 0.25, [](int, StateSample& s) { s.jerk = 0.5; });
  CHECK(running_cost(CostId::J, jerky, ctx) == doctest::Approx(0.5).epsilon(1e-12));

  const Trajectory steering =
      make_trajectory(9, 0.25, [](int, StateSample& s) {
        s.delta = 0.5;
        s.delta_rate = 2.0;
      });
  CHECK(running_cost(CostId::SA, steering, ctx) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(running_cost(CostId::SR, steering, ctx) ==
        doctest::Approx(8.0).epsilon(1e-12));

  const Trajectory yawing =
      make_trajectory(9, 0.25, [](int, StateSample& s) { s.yaw_rate = 0.25; });
  CHECK(running_cost(CostId::Y, yawing, ctx) ==
        doctest::Approx(0.125).epsilon(1e-12));
}

TEST_CASE("path length is the speed integral") {
  const Scenario scenario = make_straight_scenario();
  const EvaluationContext ctx = context_for(scenario);
  // v = 10 m/s over 5 s -> 50 m.
  const Trajectory traj =
      make_trajectory(21, 0.25, [](int, StateSample& s) { s.v = 10.0; });
  CHECK(running_cost(CostId::L, traj, ctx) == 50.0);
}

TEST_CASE("velocity and orientation offsets against the profiles") {
  const Scenario scenario = make_straight_scenario({}, 4.0, 8.0, 0.0);
  const EvaluationContext ctx = context_for(scenario);

  const Trajectory tracking =
      make_trajectory(9, 0.25, [](int, StateSample& s) { s.v = 8.0; });
  CHECK(running_cost(CostId::V, tracking, ctx) == 0.0);

  const Trajectory off =
      make_trajectory(9, 0.25, [](int, StateSample& s) { s.v = 7.5; });
  CHECK(running_cost(CostId::V, off, ctx) ==
        doctest::Approx(0.5).epsilon(1e-12));  // 0.25 * 2 s

  const Trajectory twisted =
      make_trajectory(9, 0.25, [](int, StateSample& s) { s.theta = 0.125; });
  CHECK(running_cost(CostId::O, twisted, ctx) ==
        doctest::Approx(0.03125).epsilon(1e-12));
}

TEST_CASE("lane-center offset via the frame projection") {
  const Scenario scenario = make_straight_scenario();
  const EvaluationContext ctx = context_for(scenario);

  const Trajectory centered = make_trajectory(9, 0.25, [](int, StateSample&) {});
  CHECK(running_cost(CostId::LC, centered, ctx) ==
        doctest::Approx(0.0).epsilon(1e-15));

  const Trajectory offset =
      make_trajectory(9, 0.25, [](int, StateSample& s) { s.y = 0.5; });
  CHECK(running_cost(CostId::LC, offset, ctx) ==
        doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("energy cost squares the engine power") {
  const Scenario scenario = make_straight_scenario();
  EvaluationContext ctx = context_for(scenario);
  ctx.fuel_model = FuelModel{0.25, 4.4e7, 745.0};
  ctx.traction_force.assign(9, 100.0);

  const Trajectory traj =
      make_trajectory(9, 0.25, [](int, StateSample& s) { s.v = 10.0; });
  // P = 100 * 10 / 0.25 = 4000 W -> P^2 * 2 s.
  CHECK(running_cost(CostId::E, traj, ctx) ==
        doctest::Approx(3.2e7).epsilon(1e-12));

  ctx.traction_force.assign(4, 100.0);  // wrong length
  CHECK_THROWS_AS(running_cost(CostId::E, traj, ctx), std::invalid_argument);
}

TEST_CASE("terminal costs") {
  const Scenario scenario = make_straight_scenario();
  const EvaluationContext ctx = context_for(scenario);

  const Trajectory traj = make_trajectory(
      9, 0.25, [](int, StateSample& s) { s.v = 1.0; }, 2.2);
  CHECK(terminal_cost(CostId::T, traj, ctx) ==
        doctest::Approx(4.2).epsilon(1e-12));

  CHECK(terminal_cost(CostId::TO, traj, ctx) == 0.0);
  const Trajectory offset =
      make_trajectory(9, 0.25, [](int, StateSample& s) { s.y = 0.5; });
  CHECK(terminal_cost(CostId::TO, offset, ctx) ==
        doctest::Approx(0.25).epsilon(1e-12));

  // Goal disc at (100, 0) with radius 2; a final sample at x = 95 sits
  // 3 m outside the boundary.
  const Trajectory short_stop = make_trajectory(
      9, 0.25, [](int i, StateSample& s) { s.x = 93.0 + 0.25 * i; });
  CHECK(terminal_cost(CostId::TG, short_stop, ctx) ==
        doctest::Approx(9.0).epsilon(1e-12));
  const Trajectory arrived = make_trajectory(
      9, 0.25, [](int i, StateSample& s) { s.x = 97.0 + 0.25 * i; });
  CHECK(terminal_cost(CostId::TG, arrived, ctx) == 0.0);
}

TEST_CASE("running/terminal reject ids outside their class") {
  const Scenario scenario = make_straight_scenario();
  const EvaluationContext ctx = context_for(scenario);
  const Trajectory traj = make_trajectory(9, 0.25, [](int, StateSample&) {});
  CHECK_THROWS_AS(running_cost(CostId::T, traj, ctx), std::invalid_argument);
  CHECK_THROWS_AS(terminal_cost(CostId::A, traj, ctx), std::invalid_argument);
}

TEST_CASE("obstacle proximity penalty") {
  // 9 samples over 2 s along y = 0, x in [0, 8].
  const Trajectory traj = make_trajectory(9, 0.25, [](int, StateSample&) {});

  ObstacleSet far;
  far.d_influence = 4.0;
  far.obstacles.push_back(Disc{{4.0, 50.0}, 1.0});
  CHECK(obstacle_proximity(traj, far) == 0.0);

  // Rectangle spanning the whole x range at constant clearance 2 m with
  // d_influence 4 -> integrand 1/2, over 2 s -> 1.0.
  ObstacleSet wall;
  wall.d_influence = 4.0;
  wall.obstacles.push_back(ConvexPolygon{
      {{-5.0, 2.0}, {15.0, 2.0}, {15.0, 3.0}, {-5.0, 3.0}}});
  CHECK(obstacle_proximity(traj, wall) == doctest::Approx(1.0).epsilon(1e-12));

  // Contact obstacle dominates a distant one: integrand is the max.
  ObstacleSet contact = far;
  contact.obstacles.push_back(ConvexPolygon{
      {{-5.0, 0.0}, {15.0, 0.0}, {15.0, 1.0}, {-5.0, 1.0}}});
  CHECK(obstacle_proximity(traj, contact) ==
        doctest::Approx(2.0).epsilon(1e-12));

  ObstacleSet empty;
  empty.d_influence = 4.0;
  CHECK(obstacle_proximity(traj, empty) == 0.0);

  ObstacleSet bad;
  bad.d_influence = 0.0;
  CHECK_THROWS_AS(obstacle_proximity(traj, bad), std::invalid_argument);
}

TEST_CASE("obstacle proximity is monotone in clearance") {
  const Trajectory traj = make_trajectory(9, 0.25, [](int, StateSample&) {});
  ObstacleSet near;
  near.d_influence = 5.0;
  near.obstacles.push_back(Disc{{4.0, 3.0}, 1.0});
  ObstacleSet nearer = near;
  std::get<Disc>(nearer.obstacles[0]).radius = 2.0;  // shrink every clearance
  CHECK(obstacle_proximity(traj, nearer) >= obstacle_proximity(traj, near));
}

TEST_CASE("max curvature cost") {
  const Trajectory line = make_trajectory(9, 0.25, [](int, StateSample&) {});
  CHECK(max_curvature_cost(line) == 0.0);

  std::vector<StateSample> circle(200);
  for (int i = 0; i < 200; ++i) {
    const double phi = 1.8 * kPi * i / 199.0;
    circle[i].t = i;
    circle[i].x = 10.0 * std::cos(phi);
    circle[i].y = 10.0 * std::sin(phi);
  }
  CHECK(max_curvature_cost(Trajectory(circle)) ==
        doctest::Approx(0.1).epsilon(0.01));
}

TEST_CASE("max curvature of a clothoid sits at the last interior sample") {
  // kappa(s) = c * s: integrate heading phi = c s^2 / 2 with fine
  // substeps, sample every 0.5 m up to s = 50.
  const double c = 0.01, ds_fine = 1e-3, ds_sample = 0.5, s_max = 50.0;
  std::vector<StateSample> samples;
  double x = 0.0, y = 0.0, s = 0.0;
  double next_sample = 0.0;
  while (s <= s_max + 0.5 * ds_fine) {
    if (s >= next_sample - 0.5 * ds_fine) {
      StateSample st;
      st.t = s;
      st.x = x;
      st.y = y;
      samples.push_back(st);
      next_sample += ds_sample;
    }
    const double phi = 0.5 * c * s * s;
    x += std::cos(phi) * ds_fine;
    y += std::sin(phi) * ds_fine;
    s += ds_fine;
  }
  const Trajectory traj(samples);
  const auto kappa = pointwise_curvature(traj);
  const double expected = c * traj[traj.size() - 2].t;  // t carries s here
  const double max = max_curvature_cost(traj);
  CHECK(max == doctest::Approx(expected).epsilon(0.01));
  CHECK(max == std::abs(kappa[kappa.size() - 2]));
}

TEST_CASE("consistency cost") {
  const Scenario scenario = make_straight_scenario();
  const FrenetFrame& frame = scenario.frame();

  auto lane = [](double y, double x0) {
    return make_trajectory(11, 0.2, [=](int i, StateSample& s) {
      s.x = x0 + 2.0 * i;
      s.y = y;
    });
  };

  const Trajectory base = lane(0.0, 10.0);
  CHECK(consistency_cost(base, base, frame) == 0.0);

  const Trajectory shifted = lane(0.5, 10.0);
  CHECK(consistency_cost(base, shifted, frame) ==
        doctest::Approx(0.5).epsilon(1e-12));

  const Trajectory elsewhere = lane(0.0, 60.0);
  CHECK_THROWS_AS(consistency_cost(base, elsewhere, frame), NoOverlapError);
}

TEST_CASE("consistency cost is symmetric") {
  const Scenario scenario = make_straight_scenario();
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> lat(-2.0, 2.0);
  auto wiggly = [&](double x0) {
    return make_trajectory(15, 0.2, [&, x0](int i, StateSample& s) {
      s.x = x0 + 1.5 * i;
      s.y = lat(rng);
    });
  };
  const Trajectory p = wiggly(5.0);
  const Trajectory q = wiggly(8.0);
  const double pq = consistency_cost(p, q, scenario.frame());
  const double qp = consistency_cost(q, p, scenario.frame());
  CHECK(pq == doctest::Approx(qp).epsilon(1e-9));
}

TEST_CASE("gap cost with the published constants") {
  LeadingVehicleContext lv;
  lv.d_l_min = 5.0;
  lv.k_gain = 1.14;
  lv.t_response = 0.6;

  const Trajectory traj = make_trajectory(
      13, 0.25, [](int i, StateSample& s) { s.v = 8.0 + 0.5 * (i % 3); });
  lv.d_l.resize(traj.size());
  lv.v_l.assign(traj.size(), 8.0);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    lv.d_l[i] = 5.0 + 1.14 * traj[i].v;  // exactly the desired gap
  }
  CHECK(gap_cost(traj, lv) == 0.0);

  // Constant 2 m gap error over 3 s -> 4 * 3 = 12.
  auto perturbed = lv;
  for (auto& d : perturbed.d_l) d -= 2.0;
  CHECK(gap_cost(traj, perturbed) == doctest::Approx(12.0).epsilon(1e-12));

  // Squared error is symmetric in the sign of the gap error.
  auto other_side = lv;
  for (auto& d : other_side.d_l) d += 2.0;
  CHECK(gap_cost(traj, other_side) ==
        doctest::Approx(gap_cost(traj, perturbed)).epsilon(1e-12));

  auto mismatched = lv;
  mismatched.d_l.pop_back();
  CHECK_THROWS_AS(gap_cost(traj, mismatched), std::invalid_argument);
}

TEST_CASE("gap and brake costs scale quadratically") {
  const Trajectory traj =
      make_trajectory(13, 0.25, [](int, StateSample& s) { s.v = 10.0; });
  LeadingVehicleContext lv;
  lv.v_l.assign(traj.size(), 10.0);
  lv.d_l.resize(traj.size());
  auto with_error = [&](double e) {
    auto out = lv;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      out.d_l[i] = lv.d_l_min + lv.k_gain * traj[i].v - e;
    }
    return out;
  };
  const double one = gap_cost(traj, with_error(1.5));
  const double two = gap_cost(traj, with_error(3.0));
  CHECK(two == doctest::Approx(4.0 * one).epsilon(1e-9));

  // Brake margin: equal speeds cancel the quadratic terms, leaving
  // (d_l - v T)^2.
  auto brake_with_gap = [&](double extra) {
    auto out = lv;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      out.d_l[i] = traj[i].v * lv.t_response + extra;
    }
    return out;
  };
  const double b1 = brake_distance_cost(traj, brake_with_gap(1.0));
  const double b2 = brake_distance_cost(traj, brake_with_gap(2.0));
  CHECK(b2 == doctest::Approx(4.0 * b1).epsilon(1e-9));
}

TEST_CASE("brake distance cost") {
  LeadingVehicleContext lv;

  // Everything at rest and zero gap: all terms vanish.
  const Trajectory rest = make_trajectory(9, 0.25, [](int, StateSample&) {});
  lv.d_l.assign(rest.size(), 0.0);
  lv.v_l.assign(rest.size(), 0.0);
  CHECK(brake_distance_cost(rest, lv) == 0.0);

  // Equal speeds and d_l = v T: the 1/2 v^2 / a terms cancel exactly.
  const Trajectory moving = make_trajectory(
      9, 0.25, [](int i, StateSample& s) { s.v = 6.0 + 0.25 * i; });
  lv.d_l.resize(moving.size());
  lv.v_l.resize(moving.size());
  for (std::size_t i = 0; i < moving.size(); ++i) {
    lv.v_l[i] = moving[i].v;
    lv.d_l[i] = moving[i].v * lv.t_response;
  }
  CHECK(brake_distance_cost(moving, lv) == doctest::Approx(0.0).epsilon(1e-15));

  auto invalid = lv;
  invalid.a_maxdec = 0.0;
  CHECK_THROWS_AS(brake_distance_cost(moving, invalid), std::invalid_argument);
}

TEST_CASE("fuel power") {
  const FuelModel model{0.25, 4.4e7, 745.0};
  const FuelPower fp = fuel_power(100.0, 10.0, model);
  CHECK(fp.power == doctest::Approx(4000.0).epsilon(1e-12));
  CHECK(fp.fuel_flow ==
        doctest::Approx(4000.0 / (4.4e7 * 745.0)).epsilon(1e-12));
  CHECK(fuel_power(100.0, 0.0, model).power == 0.0);
  CHECK_THROWS_AS(fuel_power(100.0, 10.0, FuelModel{0.0, 4.4e7, 745.0}),
                  std::invalid_argument);
}

TEST_CASE("squared costs are nonnegative and vanish only on zero integrands") {
  const Scenario scenario = make_straight_scenario();
  const EvaluationContext ctx = context_for(scenario);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> mag(-2.0, 2.0);
  const Trajectory random_traj =
      make_trajectory(15, 0.2, [&](int, StateSample& s) {
        s.a = mag(rng);
        s.jerk = mag(rng);
        s.delta = mag(rng);
        s.delta_rate = mag(rng);
        s.yaw_rate = mag(rng);
        s.theta = 0.3 * mag(rng);
        s.v = std::abs(mag(rng));
      });
  for (CostId id : {CostId::A, CostId::J, CostId::SA, CostId::SR, CostId::Y,
                    CostId::V, CostId::O, CostId::LC}) {
    CHECK(running_cost(id, random_traj, ctx) >= 0.0);
  }

  Trajectory nearly_zero =
      make_trajectory(15, 0.2, [](int i, StateSample& s) {
        s.a = (i == 7) ? 0.1 : 0.0;  // single interior spike
      });
  CHECK(running_cost(CostId::A, nearly_zero, ctx) > 0.0);
}

TEST_CASE("time reversal leaves even-integrand costs unchanged") {
  const Scenario scenario = make_straight_scenario();
  const EvaluationContext ctx = context_for(scenario);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> mag(-2.0, 2.0);
  std::vector<StateSample> forward(17);
  double t = 0.0;
  for (int i = 0; i < 17; ++i) {
    t += 0.05 + 0.2 * std::abs(mag(rng));
    forward[i].t = t;
    forward[i].x = i;
    forward[i].a = mag(rng);
    forward[i].jerk = mag(rng);
    forward[i].delta = mag(rng);
    forward[i].delta_rate = mag(rng);
    forward[i].yaw_rate = mag(rng);
    forward[i].v = std::abs(mag(rng));
  }
  const double t0 = forward.front().t, tf = forward.back().t;
  std::vector<StateSample> backward(forward.rbegin(), forward.rend());
  for (auto& s : backward) s.t = t0 + tf - s.t;

  const Trajectory fwd(forward), bwd(backward);
  for (CostId id : {CostId::A, CostId::J, CostId::SA, CostId::SR, CostId::Y,
                    CostId::L}) {
    CHECK(running_cost(id, fwd, ctx) ==
          doctest::Approx(running_cost(id, bwd, ctx)).epsilon(1e-12));
  }
}
