#pragma once

#include <string>
#include <utility>
#include <vector>

#include "trajcost/selection.hpp"

namespace trajcost {

using WeightMap = std::vector<std::pair<CostId, double>>;  // ordered

/// One weight swept over a grid while the others hold their base values.
struct SweepConfig {
  WeightMap base_weights;
  CostId swept_id = CostId::LC;  // must appear in base_weights
  std::vector<double> grid;      // non-empty, finite
  const Scenario* scenario = nullptr;
  CandidateConfig candidate_config;
  CandidateStart start;
};

/// The four evaluation metrics of one selected trajectory, each the
/// corresponding unweighted partial: lane center offset (LC), obstacle
/// proximity (D), path length (L) and max curvature (K).
struct MetricRow {
  double swept_value = 0.0;
  bool feasible = false;
  std::size_t winner_index = 0;
  double lane_center = 0.0;
  double obstacle_distance = 0.0;
  double speed = 0.0;
  double curvature = 0.0;
};

/// Runs the sweep: per grid value, build the spec, select the best
/// candidate and record the winner's unweighted metrics. Grid points
/// with no feasible candidate are flagged and the sweep continues.
/// Deterministic for a fixed configuration. When a consistency term is
/// present, the previous-cycle trajectory is the path-following
/// (zero-offset) candidate.
std::vector<MetricRow> run_sweep(const SweepConfig& cfg);

struct WeightSet {
  std::string label;
  WeightMap weights;
};

struct RankEntry {
  std::size_t input_index = 0;
  std::string label;
  double score = 0.0;  // ascending = better; +inf when infeasible
  bool feasible = false;
  double lane_center = 0.0;
  double obstacle_distance = 0.0;
  double speed = 0.0;
  double curvature = 0.0;
};

/// Ranks weight sets on a fixed scenario by the equally weighted sum of
/// min-max normalized metrics. The path-length metric is inverted
/// (longer = better progress = lower score); lane-center offset,
/// obstacle proximity and curvature score directly (smaller = better).
/// metric_ids selects which of {LC, D, L, K} participate. Sets with no
/// feasible candidate rank last with infinite score; ties keep input
/// order.
std::vector<RankEntry> rank_weight_sets(const std::vector<WeightSet>& sets,
                                        const std::vector<CostId>& metric_ids,
                                        const Scenario& scenario,
                                        const CandidateConfig& config,
                                        const CandidateStart& start);

/// Desk-scale reference scenario for sweeps: straight 100 m base path,
/// one disc obstacle offset 1.5 m laterally at s = 50 m, 15 m/s limit.
Scenario make_reference_scenario();

/// Candidate set used with the reference scenario: 11 terminal offsets
/// between -1.5 m and +1 m, 50 m horizon from s = 6 at 10 m/s.
CandidateConfig reference_candidate_config();
CandidateStart reference_start();

/// 11 grid points, 0.0 to 1.0 in steps of 0.1.
std::vector<double> default_sweep_grid();

}  // namespace trajcost
