#pragma once

#include <optional>
#include <vector>

#include "trajcost/scenario.hpp"
#include "trajcost/trajectory.hpp"

namespace trajcost {

/// Engine/fuel constants for the power-based energy cost.
struct FuelModel {
  double eta = 0.0;  // engine efficiency, (0, 1]
  double H = 0.0;    // fuel lower heating value [J/kg]
  double rho = 0.0;  // fuel density [kg/m^3]
};

struct FuelPower {
  double power = 0.0;      // P = F v / eta [W]
  double fuel_flow = 0.0;  // V = P / (H rho) [m^3/s]
};

/// Per-sample leading-vehicle data aligned with one ego trajectory.
struct LeadingVehicleContext {
  std::vector<double> d_l;  // gap to leading vehicle per sample [m], >= 0
  std::vector<double> v_l;  // leading vehicle speed per sample [m/s]
  double d_l_min = 5.0;     // minimum desired gap [m]
  double k_gain = 1.14;     // gap gain [s]
  double a_maxdec = 8.0;    // maximum deceleration magnitude [m/s^2]
  double t_response = 0.6;  // planner response time [s]
};

/// Bound on how close the planner may pass obstacles at speed:
/// clearance must stay >= v * t_response / max_ratio.
struct ResponseRatioConfig {
  double t_response = 0.0;  // planning cycle period [s]
  double max_ratio = 0.0;   // dimensionless bound on v*T/d
};

/// Thresholds and weights of the conditional-weight cost extension.
struct DuWeightConfig {
  double a_max = 0.0;         // acceleration threshold [m/s^2]; no default
  double d_thresh = 0.3;      // lane-offset threshold [m]
  double theta_thresh = 0.09; // orientation-offset threshold [rad]
  double v_max = 0.0;         // prescribed cruise speed [m/s]
  double w4 = 0.0;            // weight of the plain a_tan^2 integral
  double w5_0 = 0.0;          // acceleration weight, active when a > a_max
  double w6_0 = 0.0;          // sgn(a_tan) a_tan^2 weight under condition1
  double w7_0 = 0.0;          // cruise-speed weight when condition1 is false
};

/// Per-cycle extras a partial cost may need beyond the trajectory itself.
/// Fields required by a requested partial are checked at evaluation time.
struct EvaluationContext {
  const Scenario* scenario = nullptr;
  const Trajectory* previous_trajectory = nullptr;
  std::optional<LeadingVehicleContext> leading_vehicle;
  std::optional<FuelModel> fuel_model;
  std::vector<double> traction_force;  // per-sample F [N] for the energy cost
  std::optional<DuWeightConfig> du_config;
  std::optional<ResponseRatioConfig> response_config;
};

/// Builds the per-sample leading-vehicle context for one ego trajectory
/// from the scenario trace: the gap is the arc-length separation between
/// the traced leading position and the ego projection, clamped at zero.
LeadingVehicleContext make_leading_context(const Trajectory& ego,
                                           const Scenario& scenario);

}  // namespace trajcost
