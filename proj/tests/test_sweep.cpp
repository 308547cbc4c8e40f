#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "trajcost/sweep.hpp"

using namespace trajcost;

namespace {

WeightMap base_weights() {
  return {{CostId::LC, 0.17},
          {CostId::D, 0.2},
          {CostId::C, 0.02},
          {CostId::L, 0.7},
          {CostId::K, 0.01}};
}

SweepConfig reference_sweep(const Scenario& scenario, CostId swept,
                            std::vector<double> grid) {
  SweepConfig cfg;
  cfg.base_weights = base_weights();
  cfg.swept_id = swept;
  cfg.grid = std::move(grid);
  cfg.scenario = &scenario;
  cfg.candidate_config = reference_candidate_config();
  cfg.start = reference_start();
  return cfg;
}

}  // namespace

TEST_CASE("a single-point grid reproduces the base configuration run") {
  const Scenario scenario = make_reference_scenario();
  const auto rows = run_sweep(reference_sweep(scenario, CostId::LC, {0.17}));
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].feasible);
  CHECK(rows[0].swept_value == 0.17);

  // The same grid value twice gives bit-identical rows.
  const auto again =
      run_sweep(reference_sweep(scenario, CostId::LC, {0.17, 0.17}));
  CHECK(again[0].lane_center == rows[0].lane_center);
  CHECK(again[1].lane_center == rows[0].lane_center);
  CHECK(again[0].winner_index == again[1].winner_index);
}

TEST_CASE("sweep validates its configuration") {
  const Scenario scenario = make_reference_scenario();
  auto cfg = reference_sweep(scenario, CostId::LC, {0.0});
  cfg.swept_id = CostId::Y;  // not in the base weights
  CHECK_THROWS_AS(run_sweep(cfg), std::invalid_argument);

  auto empty = reference_sweep(scenario, CostId::LC, {});
  CHECK_THROWS_AS(run_sweep(empty), std::invalid_argument);

  auto no_scenario = reference_sweep(scenario, CostId::LC, {0.0});
  no_scenario.scenario = nullptr;
  CHECK_THROWS_AS(run_sweep(no_scenario), std::invalid_argument);
}

TEST_CASE("raising the lane-center weight never raises the lane-center metric") {
  const Scenario scenario = make_reference_scenario();
  const auto rows =
      run_sweep(reference_sweep(scenario, CostId::LC, default_sweep_grid()));
  REQUIRE(rows.size() == 11);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].feasible);
    CHECK(rows[i].lane_center <= rows[i - 1].lane_center + 1e-12);
  }
}

TEST_CASE("raising the obstacle weight never lowers the lane-center metric") {
  const Scenario scenario = make_reference_scenario();
  const auto rows =
      run_sweep(reference_sweep(scenario, CostId::D, default_sweep_grid()));
  REQUIRE(rows.size() == 11);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].feasible);
    CHECK(rows[i].lane_center + 1e-12 >= rows[i - 1].lane_center);
    // More obstacle weight also never increases the proximity cost.
    CHECK(rows[i].obstacle_distance <= rows[i - 1].obstacle_distance + 1e-12);
  }
}

TEST_CASE("sweeps are deterministic") {
  const Scenario scenario = make_reference_scenario();
  const auto first =
      run_sweep(reference_sweep(scenario, CostId::D, default_sweep_grid()));
  const auto second =
      run_sweep(reference_sweep(scenario, CostId::D, default_sweep_grid()));
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    CHECK(first[i].lane_center == second[i].lane_center);
    CHECK(first[i].obstacle_distance == second[i].obstacle_distance);
    CHECK(first[i].speed == second[i].speed);
    CHECK(first[i].curvature == second[i].curvature);
    CHECK(first[i].winner_index == second[i].winner_index);
  }
}

TEST_CASE("scaling base weights and grid together changes no winner") {
  const Scenario scenario = make_reference_scenario();
  const auto rows =
      run_sweep(reference_sweep(scenario, CostId::D, default_sweep_grid()));

  SweepConfig scaled = reference_sweep(scenario, CostId::D, {});
  for (auto& [id, w] : scaled.base_weights) w *= 3.0;
  for (double g : default_sweep_grid()) scaled.grid.push_back(3.0 * g);
  const auto scaled_rows = run_sweep(scaled);

  REQUIRE(rows.size() == scaled_rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].winner_index == scaled_rows[i].winner_index);
    CHECK(rows[i].lane_center == scaled_rows[i].lane_center);
  }
}

TEST_CASE("identical weight sets tie in input order") {
  const Scenario scenario = make_reference_scenario();
  const std::vector<WeightSet> sets = {{"first", base_weights()},
                                       {"second", base_weights()}};
  const auto ranking =
      rank_weight_sets(sets, {CostId::LC, CostId::D, CostId::L, CostId::K},
                       scenario, reference_candidate_config(),
                       reference_start());
  REQUIRE(ranking.size() == 2);
  CHECK(ranking[0].label == "first");
  CHECK(ranking[1].label == "second");
  CHECK(ranking[0].score == ranking[1].score);
}

TEST_CASE("a set that dominates every scored metric ranks first") {
  const Scenario scenario = make_reference_scenario();
  // Heavy lane-centering picks the path-following candidate (best LC and
  // best curvature); heavy obstacle weight picks an offset candidate.
  const std::vector<WeightSet> sets = {
      {"avoid", {{CostId::LC, 0.001}, {CostId::D, 1.0}}},
      {"center", {{CostId::LC, 1.0}, {CostId::D, 0.001}}}};
  const auto ranking =
      rank_weight_sets(sets, {CostId::LC, CostId::K}, scenario,
                       reference_candidate_config(), reference_start());
  REQUIRE(ranking.size() == 2);
  CHECK(ranking[0].label == "center");
  CHECK(ranking[0].lane_center < ranking[1].lane_center);
  CHECK(ranking[0].curvature < ranking[1].curvature);
}

TEST_CASE("ranking the published weight sets emits a full ordering") {
  const Scenario scenario = make_reference_scenario();
  const std::vector<WeightSet> sets = {
      {"RA1",
       {{CostId::D, 0.2},
        {CostId::L, 0.2},
        {CostId::LC, 0.17},
        {CostId::K, 0.01},
        {CostId::C, 0.02}}},
      {"RA2",
       {{CostId::D, 0.1},
        {CostId::L, 0.7},
        {CostId::LC, 0.17},
        {CostId::K, 0.01},
        {CostId::C, 0.02}}},
      {"KC1", {{CostId::D, 0.1}, {CostId::K, 0.01}, {CostId::C, 0.02}}}};
  const auto ranking =
      rank_weight_sets(sets, {CostId::LC, CostId::D, CostId::L, CostId::K},
                       scenario, reference_candidate_config(),
                       reference_start());
  REQUIRE(ranking.size() == 3);
  for (const auto& entry : ranking) {
    CHECK(entry.feasible);
    CHECK(std::isfinite(entry.score));
    CHECK(entry.score >= 0.0);
    CHECK(entry.score <= 1.0);
  }
  // Scores ascend.
  CHECK(ranking[0].score <= ranking[1].score);
  CHECK(ranking[1].score <= ranking[2].score);
}

TEST_CASE("duplicating a set leaves the ranking unchanged") {
  const Scenario scenario = make_reference_scenario();
  const std::vector<WeightSet> sets = {
      {"avoid", {{CostId::LC, 0.001}, {CostId::D, 1.0}}},
      {"center", {{CostId::LC, 1.0}, {CostId::D, 0.001}}}};
  std::vector<WeightSet> with_copy = sets;
  with_copy.push_back({"avoid-copy", sets[0].weights});

  // Three metrics: with two distinct winners an even metric count would
  // tie every score at 1/2 by construction.
  const std::vector<CostId> metrics = {CostId::LC, CostId::D, CostId::L};
  const auto before = rank_weight_sets(sets, metrics, scenario,
                                       reference_candidate_config(),
                                       reference_start());
  const auto after = rank_weight_sets(with_copy, metrics, scenario,
                                      reference_candidate_config(),
                                      reference_start());
  REQUIRE(after.size() == 3);
  // The copy ties with the original and sits adjacent to it.
  std::size_t original = 0, copy = 0;
  for (std::size_t i = 0; i < after.size(); ++i) {
    if (after[i].label == "avoid") original = i;
    if (after[i].label == "avoid-copy") copy = i;
  }
  CHECK(after[original].score == after[copy].score);
  CHECK((copy == original + 1));
  // Relative order of the distinct sets is preserved.
  CHECK((before[0].label == after[0].label));
}

TEST_CASE("sets with no feasible candidate rank last with infinite score") {
  // A goal region no candidate can reach makes everything infeasible.
  ScenarioParams params;
  params.base_path = {{0.0, 0.0}, {100.0, 0.0}};
  params.speed_limit = 15.0;
  params.goal.shape = Disc{{100.0, 50.0}, 1.0};
  const Scenario unreachable(std::move(params));

  const std::vector<WeightSet> sets = {{"only", base_weights()}};
  const auto ranking =
      rank_weight_sets(sets, {CostId::LC}, unreachable,
                       reference_candidate_config(), reference_start());
  REQUIRE(ranking.size() == 1);
  CHECK_FALSE(ranking[0].feasible);
  CHECK(std::isinf(ranking[0].score));
}

TEST_CASE("infeasible grid points are flagged and the sweep continues") {
  ScenarioParams params;
  params.base_path = {{0.0, 0.0}, {100.0, 0.0}};
  params.speed_limit = 15.0;
  params.goal.shape = Disc{{100.0, 50.0}, 1.0};  // unreachable
  const Scenario unreachable(std::move(params));

  SweepConfig cfg;
  cfg.base_weights = base_weights();
  cfg.swept_id = CostId::LC;
  cfg.grid = {0.0, 0.5, 1.0};
  cfg.scenario = &unreachable;
  cfg.candidate_config = reference_candidate_config();
  cfg.start = reference_start();
  const auto rows = run_sweep(cfg);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    CHECK_FALSE(row.feasible);
    CHECK(std::isnan(row.lane_center));
  }
}
