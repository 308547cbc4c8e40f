#include "trajcost/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trajcost {

namespace {

// Appends the first offending sample of one constraint, if any.
template <typename Fn>
void scan(const Trajectory& traj, const char* name, Fn deficit,
          std::vector<Violation>& out) {
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double m = deficit(i);
    if (m > 0.0) {
      out.push_back({name, i, m});
      return;
    }
  }
}

}  // namespace

FeasibilityReport check_constraints(
    const Trajectory& traj, const Scenario& scenario,
    const std::optional<ResponseRatioConfig>& response,
    const std::optional<KinematicBounds>& bounds) {
  FeasibilityReport report;
  auto& violations = report.violations;
  const bool has_obstacles = !scenario.obstacles().obstacles.empty();

  auto clearance_at = [&](std::size_t i) {
    return min_clearance(traj[i].position(), scenario.obstacles()) -
           scenario.ego_radius();
  };

  if (has_obstacles) {
    // Occupancy: the ego disc must keep strictly positive clearance.
    scan(traj, "collision",
         [&](std::size_t i) { return -clearance_at(i); }, violations);
  }

  scan(traj, "speed_limit",
       [&](std::size_t i) { return traj[i].v - scenario.speed_limit(); },
       violations);

  const double goal_dist = scenario.goal().distance_to(traj.back().position());
  if (goal_dist > 0.0) {
    violations.push_back({"goal", traj.size() - 1, goal_dist});
  }
  if (scenario.goal().time_window) {
    const auto [t_min, t_max] = *scenario.goal().time_window;
    const double tf = traj.back().t;
    if (tf < t_min || tf > t_max) {
      violations.push_back({"goal_time", traj.size() - 1,
                            tf < t_min ? t_min - tf : tf - t_max});
    }
  }

  if (response && !(response->t_response > 0.0 && response->max_ratio > 0.0)) {
    throw std::invalid_argument(
        "check_constraints: response-ratio config must be positive");
  }
  if (response && has_obstacles) {
    scan(traj, "response_ratio",
         [&](std::size_t i) {
           const double required =
               traj[i].v * response->t_response / response->max_ratio;
           return required - clearance_at(i);
         },
         violations);
  }

  if (bounds) {
    if (bounds->a_max) {
      scan(traj, "a_max",
           [&](std::size_t i) { return std::abs(traj[i].a) - *bounds->a_max; },
           violations);
    }
    if (bounds->delta_max) {
      scan(traj, "delta_max",
           [&](std::size_t i) {
             return std::abs(traj[i].delta) - *bounds->delta_max;
           },
           violations);
    }
  }

  report.feasible = violations.empty();
  return report;
}

SelectionResult select_best_with(
    const std::vector<Trajectory>& candidates, const CandidateEvaluator& eval,
    bool needs_leading_vehicle, const EvaluationContext& ctx,
    const Scenario& scenario, const std::optional<KinematicBounds>& bounds) {
  if (candidates.empty()) {
    throw std::invalid_argument("select_best: no candidates");
  }

  SelectionResult result;
  result.reports.reserve(candidates.size());
  bool found = false;
  double best_cost = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Trajectory& candidate = candidates[i];
    result.reports.push_back(
        check_constraints(candidate, scenario, ctx.response_config, bounds));
    if (!result.reports.back().feasible) continue;

    EvaluationContext local = ctx;
    if (needs_leading_vehicle && !local.leading_vehicle &&
        scenario.leading_vehicle()) {
      local.leading_vehicle = make_leading_context(candidate, scenario);
    }
    CostBreakdown breakdown = eval(candidate, local);
    if (!found || breakdown.total < best_cost) {
      found = true;
      best_cost = breakdown.total;
      result.index = i;
      result.breakdown = std::move(breakdown);
    }
  }

  if (!found) {
    throw NoFeasibleCandidateError("select_best: no feasible candidate",
                                   std::move(result.reports));
  }
  return result;
}

SelectionResult select_best(const std::vector<Trajectory>& candidates,
                            const CostSpec& spec, const EvaluationContext& ctx,
                            const Scenario& scenario,
                            const std::optional<KinematicBounds>& bounds) {
  const bool needs_lv = spec.uses(CostId::LV) || spec.uses(CostId::BD);
  return select_best_with(
      candidates,
      [&spec](const Trajectory& traj, const EvaluationContext& local) {
        return evaluate(spec, traj, local);
      },
      needs_lv, ctx, scenario, bounds);
}

}  // namespace trajcost
