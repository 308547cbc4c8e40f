#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "trajcost/context.hpp"
#include "trajcost/scenario.hpp"

namespace trajcost {

/// A scenario document plus the optional evaluation-context sections
/// (fuel model, conditional-weight config) that live alongside it.
struct ScenarioFile {
  Scenario scenario;
  std::optional<FuelModel> fuel_model;
  std::optional<DuWeightConfig> du_config;
};

/// Loads and schema-validates a scenario JSON document.
/// Throws ParseError with the file name and offending field.
ScenarioFile load_scenario(const std::filesystem::path& path);

/// Same, from an in-memory document (`name` labels error messages).
ScenarioFile parse_scenario_json(const std::string& text,
                                 const std::string& name);

struct LoadedTrajectory {
  Trajectory trajectory;
  std::vector<double> traction_force;  // empty when the file has no F column
};

/// Reads a comma-delimited trajectory with a header row. Columns t, x, y
/// are required; v, a, a_tan, jerk, theta, yaw_rate, delta, delta_rate
/// and F are optional. Missing kinematic columns are recomputed with
/// derive_kinematics (which needs >= 4 rows).
LoadedTrajectory load_trajectory(const std::filesystem::path& path);

LoadedTrajectory parse_trajectory_csv(const std::string& text,
                                      const std::string& name);

/// Writes all kinematic columns (plus F when given) with shortest
/// round-trip number formatting, so reloading reproduces the samples
/// bit-exactly.
void save_trajectory(const std::filesystem::path& path,
                     const Trajectory& trajectory,
                     const std::vector<double>& traction_force = {});

std::string trajectory_to_csv(const Trajectory& trajectory,
                              const std::vector<double>& traction_force = {});

}  // namespace trajcost
