#include "trajcost/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace trajcost {

namespace {

CostSpec spec_from_weights(const WeightMap& weights) {
  std::vector<CostTerm> terms;
  terms.reserve(weights.size());
  for (const auto& [id, w] : weights) terms.push_back({id, w});
  return CostSpec(std::move(terms));
}

bool uses_cost(const WeightMap& weights, CostId id) {
  return std::any_of(weights.begin(), weights.end(),
                     [id](const auto& p) { return p.first == id; });
}

struct Metrics {
  double lane_center = 0.0;
  double obstacle_distance = 0.0;
  double speed = 0.0;
  double curvature = 0.0;
};

Metrics winner_metrics(const Trajectory& winner, const EvaluationContext& ctx) {
  Metrics m;
  m.lane_center = evaluate_partial(CostId::LC, winner, ctx);
  m.obstacle_distance = evaluate_partial(CostId::D, winner, ctx);
  m.speed = evaluate_partial(CostId::L, winner, ctx);
  m.curvature = evaluate_partial(CostId::K, winner, ctx);
  return m;
}

// Path-following candidate used as the previous-cycle choice when a
// consistency term is evaluated outside a replanning loop.
Trajectory base_follow_candidate(const Scenario& scenario,
                                 const CandidateConfig& config,
                                 const CandidateStart& start) {
  CandidateConfig follow = config;
  follow.lateral_offsets = {0.0};
  return std::move(
      generate_candidates(scenario.frame(), start, follow).front());
}

}  // namespace

std::vector<MetricRow> run_sweep(const SweepConfig& cfg) {
  if (cfg.scenario == nullptr) {
    throw std::invalid_argument("run_sweep: no scenario");
  }
  if (cfg.grid.empty()) {
    throw std::invalid_argument("run_sweep: empty grid");
  }
  for (double g : cfg.grid) {
    if (!std::isfinite(g)) {
      throw std::invalid_argument("run_sweep: grid values must be finite");
    }
  }
  if (!uses_cost(cfg.base_weights, cfg.swept_id)) {
    throw std::invalid_argument(
        "run_sweep: swept id is not part of the base weights");
  }

  const Scenario& scenario = *cfg.scenario;
  const std::vector<Trajectory> candidates =
      generate_candidates(scenario.frame(), cfg.start, cfg.candidate_config);
  const Trajectory previous =
      base_follow_candidate(scenario, cfg.candidate_config, cfg.start);

  EvaluationContext ctx;
  ctx.scenario = &scenario;
  ctx.previous_trajectory = &previous;

  std::vector<MetricRow> rows;
  rows.reserve(cfg.grid.size());
  for (double value : cfg.grid) {
    WeightMap weights = cfg.base_weights;
    for (auto& [id, w] : weights) {
      if (id == cfg.swept_id) w = value;
    }
    MetricRow row;
    row.swept_value = value;
    try {
      const SelectionResult sel =
          select_best(candidates, spec_from_weights(weights), ctx, scenario);
      const Metrics m = winner_metrics(candidates[sel.index], ctx);
      row.feasible = true;
      row.winner_index = sel.index;
      row.lane_center = m.lane_center;
      row.obstacle_distance = m.obstacle_distance;
      row.speed = m.speed;
      row.curvature = m.curvature;
    } catch (const NoFeasibleCandidateError&) {
      row.feasible = false;
      row.lane_center = row.obstacle_distance = row.speed = row.curvature =
          std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<RankEntry> rank_weight_sets(const std::vector<WeightSet>& sets,
                                        const std::vector<CostId>& metric_ids,
                                        const Scenario& scenario,
                                        const CandidateConfig& config,
                                        const CandidateStart& start) {
  if (sets.empty()) {
    throw std::invalid_argument("rank_weight_sets: no weight sets");
  }
  for (CostId id : metric_ids) {
    if (id != CostId::LC && id != CostId::D && id != CostId::L &&
        id != CostId::K) {
      throw std::invalid_argument(
          "rank_weight_sets: metrics must be drawn from LC, D, L, K");
    }
  }

  const std::vector<Trajectory> candidates =
      generate_candidates(scenario.frame(), start, config);
  const Trajectory previous = base_follow_candidate(scenario, config, start);

  EvaluationContext ctx;
  ctx.scenario = &scenario;
  ctx.previous_trajectory = &previous;

  std::vector<RankEntry> entries(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    RankEntry& e = entries[i];
    e.input_index = i;
    e.label = sets[i].label;
    try {
      const SelectionResult sel =
          select_best(candidates, spec_from_weights(sets[i].weights), ctx,
                      scenario);
      const Metrics m = winner_metrics(candidates[sel.index], ctx);
      e.feasible = true;
      e.lane_center = m.lane_center;
      e.obstacle_distance = m.obstacle_distance;
      e.speed = m.speed;
      e.curvature = m.curvature;
    } catch (const NoFeasibleCandidateError&) {
      e.feasible = false;
      e.score = std::numeric_limits<double>::infinity();
      e.lane_center = e.obstacle_distance = e.speed = e.curvature =
          std::numeric_limits<double>::quiet_NaN();
    }
  }

  // Min-max normalize each metric across the feasible sets; the
  // path-length metric is inverted so longer (more progress) scores
  // lower. Degenerate spreads contribute zero.
  auto metric_of = [](const RankEntry& e, CostId id) {
    switch (id) {
      case CostId::LC: return e.lane_center;
      case CostId::D: return e.obstacle_distance;
      case CostId::L: return e.speed;
      default: return e.curvature;
    }
  };
  for (CostId id : metric_ids) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& e : entries) {
      if (!e.feasible) continue;
      lo = std::min(lo, metric_of(e, id));
      hi = std::max(hi, metric_of(e, id));
    }
    if (!(hi > lo)) continue;
    for (auto& e : entries) {
      if (!e.feasible) continue;
      double norm = (metric_of(e, id) - lo) / (hi - lo);
      if (id == CostId::L) norm = 1.0 - norm;
      e.score += norm / static_cast<double>(metric_ids.size());
    }
  }

  std::stable_sort(entries.begin(), entries.end(),
                   [](const RankEntry& a, const RankEntry& b) {
                     return a.score < b.score;
                   });
  return entries;
}

Scenario make_reference_scenario() {
  ScenarioParams params;
  params.base_path = {{0.0, 0.0}, {100.0, 0.0}};
  params.obstacles.d_influence = 5.0;
  params.obstacles.obstacles.push_back(Disc{{50.0, 1.5}, 1.0});
  params.speed_limit = 15.0;
  params.goal.shape = Disc{{56.0, 0.0}, 6.0};
  params.v_des = PiecewiseLinearProfile({{0.0, 10.0}, {100.0, 10.0}});
  params.theta_des = PiecewiseLinearProfile({{0.0, 0.0}, {100.0, 0.0}});
  params.ego_radius = 0.0;
  params.frenet_spacing = 0.5;
  return Scenario(std::move(params));
}

CandidateConfig reference_candidate_config() {
  CandidateConfig config;
  config.lateral_offsets = {-1.5, -1.25, -1.0, -0.75, -0.5, -0.25,
                            0.0,  0.25,  0.5,  0.75,  1.0};
  config.horizon = 50.0;
  config.speed = 10.0;
  config.sample_spacing = 0.5;
  return config;
}

CandidateStart reference_start() { return {6.0, 0.0, 0.0}; }

std::vector<double> default_sweep_grid() {
  std::vector<double> grid(11);
  for (int i = 0; i <= 10; ++i) grid[i] = static_cast<double>(i) / 10.0;
  return grid;
}

}  // namespace trajcost
