#include "trajcost/costs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "trajcost/errors.hpp"

namespace trajcost {

namespace {

constexpr std::array<CostInfo, kCostIdCount> kRegistry = {{
    {CostId::A, "A", CostKind::kRunning, "acceleration, integral of a^2"},
    {CostId::J, "J", CostKind::kRunning, "jerk, integral of (da/dt)^2"},
    {CostId::SA, "SA", CostKind::kRunning, "steering angle, integral of delta^2"},
    {CostId::SR, "SR", CostKind::kRunning, "steering rate, integral of delta_rate^2"},
    {CostId::E, "E", CostKind::kRunning, "energy, integral of engine power^2"},
    {CostId::Y, "Y", CostKind::kRunning, "yaw rate, integral of yaw_rate^2"},
    {CostId::LC, "LC", CostKind::kRunning, "lane center offset, integral of d^2"},
    {CostId::V, "V", CostKind::kRunning, "velocity offset, integral of (v_des - v)^2"},
    {CostId::O, "O", CostKind::kRunning, "orientation offset, integral of (theta_des - theta)^2"},
    {CostId::D, "D", CostKind::kRunning, "distance to obstacles, integral of the proximity penalty"},
    {CostId::L, "L", CostKind::kRunning, "path length, integral of v"},
    {CostId::T, "T", CostKind::kTerminal, "final time tf"},
    {CostId::TO, "TO", CostKind::kTerminal, "terminal lane-center offset squared"},
    {CostId::TG, "TG", CostKind::kTerminal, "terminal distance to goal squared"},
    {CostId::K, "K", CostKind::kExtension, "maximum pointwise |curvature|"},
    {CostId::C, "C", CostKind::kExtension, "consistency: mean lateral distance to the previous trajectory"},
    {CostId::LV, "LV", CostKind::kExtension, "leading-vehicle gap error squared, integrated"},
    {CostId::BD, "BD", CostKind::kExtension, "brake-distance margin squared, integrated"},
}};

std::vector<double> squared(const Trajectory& traj, double StateSample::*field) {
  std::vector<double> f(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double x = traj[i].*field;
    f[i] = x * x;
  }
  return f;
}

}  // namespace

const std::array<CostInfo, kCostIdCount>& cost_registry() { return kRegistry; }

const CostInfo& cost_info(CostId id) {
  return kRegistry[static_cast<std::size_t>(id)];
}

std::string_view to_token(CostId id) { return cost_info(id).token; }

std::optional<CostId> cost_id_from_token(std::string_view token) {
  if (token == "\xce\xba") return CostId::K;  // UTF-8 kappa
  for (const auto& info : kRegistry) {
    if (info.token == token) return info.id;
  }
  return std::nullopt;
}

std::string context_gap(CostId id, const EvaluationContext& ctx) {
  const std::string token(to_token(id));
  switch (id) {
    case CostId::E:
      if (!ctx.fuel_model) return token + " requires a fuel model";
      if (ctx.traction_force.empty())
        return token + " requires a per-sample traction force signal";
      return {};
    case CostId::LC:
    case CostId::TO:
    case CostId::TG:
    case CostId::D:
      if (ctx.scenario == nullptr) return token + " requires a scenario";
      return {};
    case CostId::V:
      if (ctx.scenario == nullptr) return token + " requires a scenario";
      if (ctx.scenario->v_des().empty())
        return token + " requires a desired-velocity profile in the scenario";
      return {};
    case CostId::O:
      if (ctx.scenario == nullptr) return token + " requires a scenario";
      if (ctx.scenario->theta_des().empty())
        return token + " requires a desired-heading profile in the scenario";
      return {};
    case CostId::C:
      if (ctx.scenario == nullptr) return token + " requires a scenario";
      if (ctx.previous_trajectory == nullptr)
        return token + " requires the previously chosen trajectory";
      return {};
    case CostId::LV:
    case CostId::BD:
      if (!ctx.leading_vehicle)
        return token + " requires a leading-vehicle context";
      return {};
    default:
      return {};
  }
}

double integrate_trapezoid(const Trajectory& trajectory,
                           const std::vector<double>& integrand) {
  if (integrand.size() != trajectory.size()) {
    throw std::invalid_argument("integrand size does not match trajectory");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < integrand.size(); ++i) {
    const double dt = trajectory[i + 1].t - trajectory[i].t;
    sum += 0.5 * (integrand[i] + integrand[i + 1]) * dt;
  }
  return sum;
}

std::vector<FrenetPoint> project_onto(const Trajectory& trajectory,
                                      const FrenetFrame& frame) {
  std::vector<FrenetPoint> out(trajectory.size());
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    out[i] = frame.to_frenet(trajectory[i].position());
  }
  return out;
}

double running_cost(CostId id, const Trajectory& traj,
                    const EvaluationContext& ctx) {
  if (const std::string gap = context_gap(id, ctx); !gap.empty()) {
    throw MissingContextError(std::string(to_token(id)), gap);
  }
  switch (id) {
    case CostId::A:
      return integrate_trapezoid(traj, squared(traj, &StateSample::a));
    case CostId::J:
      return integrate_trapezoid(traj, squared(traj, &StateSample::jerk));
    case CostId::SA:
      return integrate_trapezoid(traj, squared(traj, &StateSample::delta));
    case CostId::SR:
      return integrate_trapezoid(traj, squared(traj, &StateSample::delta_rate));
    case CostId::Y:
      return integrate_trapezoid(traj, squared(traj, &StateSample::yaw_rate));
    case CostId::L: {
      std::vector<double> f(traj.size());
      for (std::size_t i = 0; i < traj.size(); ++i) f[i] = traj[i].v;
      return integrate_trapezoid(traj, f);
    }
    case CostId::E: {
      if (ctx.traction_force.size() != traj.size()) {
        throw std::invalid_argument(
            "E: traction force signal does not match trajectory samples");
      }
      std::vector<double> f(traj.size());
      for (std::size_t i = 0; i < traj.size(); ++i) {
        const double p =
            fuel_power(ctx.traction_force[i], traj[i].v, *ctx.fuel_model).power;
        f[i] = p * p;
      }
      return integrate_trapezoid(traj, f);
    }
    case CostId::LC: {
      const auto pts = project_onto(traj, ctx.scenario->frame());
      std::vector<double> f(traj.size());
      for (std::size_t i = 0; i < traj.size(); ++i) f[i] = pts[i].d * pts[i].d;
      return integrate_trapezoid(traj, f);
    }
    case CostId::V: {
      const auto& profile = ctx.scenario->v_des();
      const auto pts = project_onto(traj, ctx.scenario->frame());
      std::vector<double> f(traj.size());
      for (std::size_t i = 0; i < traj.size(); ++i) {
        const double e = profile(pts[i].s) - traj[i].v;
        f[i] = e * e;
      }
      return integrate_trapezoid(traj, f);
    }
    case CostId::O: {
      const auto& profile = ctx.scenario->theta_des();
      const auto pts = project_onto(traj, ctx.scenario->frame());
      std::vector<double> f(traj.size());
      for (std::size_t i = 0; i < traj.size(); ++i) {
        const double e = angle_diff(profile(pts[i].s), traj[i].theta);
        f[i] = e * e;
      }
      return integrate_trapezoid(traj, f);
    }
    case CostId::D:
      return obstacle_proximity(traj, ctx.scenario->obstacles());
    default:
      throw std::invalid_argument("running_cost: " +
                                  std::string(to_token(id)) +
                                  " is not a running partial");
  }
}

double terminal_cost(CostId id, const Trajectory& traj,
                     const EvaluationContext& ctx) {
  if (const std::string gap = context_gap(id, ctx); !gap.empty()) {
    throw MissingContextError(std::string(to_token(id)), gap);
  }
  switch (id) {
    case CostId::T:
      return traj.back().t;
    case CostId::TO: {
      const FrenetPoint p = ctx.scenario->frame().to_frenet(traj.back().position());
      return p.d * p.d;
    }
    case CostId::TG: {
      const double d = ctx.scenario->goal().distance_to(traj.back().position());
      return d * d;
    }
    default:
      throw std::invalid_argument("terminal_cost: " +
                                  std::string(to_token(id)) +
                                  " is not a terminal partial");
  }
}

double obstacle_proximity(const Trajectory& traj, const ObstacleSet& set) {
  validate(set);
  if (set.obstacles.empty()) return 0.0;
  std::vector<double> f(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double clearance =
        std::max(0.0, min_clearance(traj[i].position(), set));
    f[i] = std::max(0.0, 1.0 - clearance / set.d_influence);
  }
  return integrate_trapezoid(traj, f);
}

double max_curvature_cost(const Trajectory& traj) {
  const auto kappa = pointwise_curvature(traj);
  double best = 0.0;
  for (double k : kappa) best = std::max(best, std::abs(k));
  return best;
}

namespace {

// Projected lateral profile d(s) of a trajectory, sorted by s with
// duplicate abscissae collapsed.
std::vector<std::pair<double, double>> lateral_profile(
    const Trajectory& traj, const FrenetFrame& frame) {
  auto pts = project_onto(traj, frame);
  std::vector<std::pair<double, double>> prof;
  prof.reserve(pts.size());
  for (const auto& p : pts) prof.emplace_back(p.s, p.d);
  std::sort(prof.begin(), prof.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  prof.erase(std::unique(prof.begin(), prof.end(),
                         [](const auto& a, const auto& b) {
                           return a.first == b.first;
                         }),
             prof.end());
  return prof;
}

double interp_profile(const std::vector<std::pair<double, double>>& prof,
                      double s) {
  auto it = std::upper_bound(
      prof.begin(), prof.end(), s,
      [](double value, const auto& knot) { return value < knot.first; });
  if (it == prof.begin()) return prof.front().second;
  if (it == prof.end()) return prof.back().second;
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double u = (s - lo.first) / (hi.first - lo.first);
  return lo.second + u * (hi.second - lo.second);
}

}  // namespace

double consistency_cost(const Trajectory& current, const Trajectory& previous,
                        const FrenetFrame& frame) {
  const auto cur = lateral_profile(current, frame);
  const auto prev = lateral_profile(previous, frame);
  const double s1 = std::max(cur.front().first, prev.front().first);
  const double s2 = std::min(cur.back().first, prev.back().first);
  if (!(s2 > s1)) {
    throw NoOverlapError(
        "consistency_cost: trajectories share no arc-length interval");
  }

  // Union grid of both profiles' breakpoints inside [s1, s2]; the signed
  // lateral difference is piecewise linear on it, so |difference| can be
  // integrated exactly by splitting intervals at sign changes.
  std::vector<double> grid = {s1, s2};
  for (const auto& p : cur)
    if (p.first > s1 && p.first < s2) grid.push_back(p.first);
  for (const auto& p : prev)
    if (p.first > s1 && p.first < s2) grid.push_back(p.first);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  double integral = 0.0;
  double sa = grid[0];
  double da = interp_profile(cur, sa) - interp_profile(prev, sa);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double sb = grid[i];
    const double db = interp_profile(cur, sb) - interp_profile(prev, sb);
    const double w = sb - sa;
    if (da * db >= 0.0) {
      integral += 0.5 * (std::abs(da) + std::abs(db)) * w;
    } else {
      const double root = da / (da - db);  // in (0, 1)
      integral += 0.5 * std::abs(da) * root * w;
      integral += 0.5 * std::abs(db) * (1.0 - root) * w;
    }
    sa = sb;
    da = db;
  }
  return integral / (s2 - s1);
}

namespace {

void check_leading_context(const Trajectory& traj,
                           const LeadingVehicleContext& lv) {
  if (lv.d_l.size() != traj.size() || lv.v_l.size() != traj.size()) {
    throw std::invalid_argument(
        "leading-vehicle context sample count does not match trajectory");
  }
  for (double d : lv.d_l) {
    if (d < 0.0) {
      throw std::invalid_argument("leading-vehicle gap must be non-negative");
    }
  }
}

}  // namespace

double gap_cost(const Trajectory& traj, const LeadingVehicleContext& lv) {
  check_leading_context(traj, lv);
  std::vector<double> f(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double desired = lv.d_l_min + lv.k_gain * traj[i].v;
    const double e = desired - lv.d_l[i];
    f[i] = e * e;
  }
  return integrate_trapezoid(traj, f);
}

double brake_distance_cost(const Trajectory& traj,
                           const LeadingVehicleContext& lv) {
  check_leading_context(traj, lv);
  if (!(lv.a_maxdec > 0.0)) {
    throw std::invalid_argument(
        "brake_distance_cost: a_maxdec must be positive");
  }
  std::vector<double> f(traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double v = traj[i].v;
    const double vl = lv.v_l[i];
    const double margin = lv.d_l[i] + 0.5 * vl * vl / lv.a_maxdec -
                          v * lv.t_response - 0.5 * v * v / lv.a_maxdec;
    f[i] = margin * margin;
  }
  return integrate_trapezoid(traj, f);
}

FuelPower fuel_power(double traction_force, double speed,
                     const FuelModel& model) {
  if (!(model.eta > 0.0) || model.eta > 1.0) {
    throw std::invalid_argument("fuel model: eta must lie in (0, 1]");
  }
  if (!(model.H > 0.0) || !(model.rho > 0.0)) {
    throw std::invalid_argument("fuel model: H and rho must be positive");
  }
  FuelPower out;
  out.power = traction_force * speed / model.eta;
  out.fuel_flow = out.power / (model.H * model.rho);
  return out;
}

double evaluate_partial(CostId id, const Trajectory& traj,
                        const EvaluationContext& ctx) {
  if (const std::string gap = context_gap(id, ctx); !gap.empty()) {
    throw MissingContextError(std::string(to_token(id)), gap);
  }
  switch (cost_info(id).kind) {
    case CostKind::kRunning:
      return running_cost(id, traj, ctx);
    case CostKind::kTerminal:
      return terminal_cost(id, traj, ctx);
    case CostKind::kExtension:
      break;
  }
  switch (id) {
    case CostId::K:
      return max_curvature_cost(traj);
    case CostId::C:
      return consistency_cost(traj, *ctx.previous_trajectory,
                              ctx.scenario->frame());
    case CostId::LV:
      return gap_cost(traj, *ctx.leading_vehicle);
    case CostId::BD:
      return brake_distance_cost(traj, *ctx.leading_vehicle);
    default:
      throw std::invalid_argument("evaluate_partial: unknown cost id");
  }
}

LeadingVehicleContext make_leading_context(const Trajectory& ego,
                                           const Scenario& scenario) {
  if (!scenario.leading_vehicle()) {
    throw MissingContextError("LV",
                              "scenario carries no leading-vehicle trace");
  }
  const auto& trace = *scenario.leading_vehicle();
  LeadingVehicleContext ctx;
  ctx.d_l_min = trace.d_l_min;
  ctx.k_gain = trace.k_gain;
  ctx.a_maxdec = trace.a_maxdec;
  ctx.t_response = trace.t_response;
  ctx.d_l.resize(ego.size());
  ctx.v_l.resize(ego.size());
  for (std::size_t i = 0; i < ego.size(); ++i) {
    const double t = ego[i].t;
    const double s_ego = scenario.frame().to_frenet(ego[i].position()).s;
    ctx.d_l[i] = std::max(0.0, trace.s_of_t(t) - s_ego);
    ctx.v_l[i] = trace.v_of_t(t);
  }
  return ctx;
}

}  // namespace trajcost
