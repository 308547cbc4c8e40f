#pragma once

#include <string>
#include <vector>

#include "trajcost/cost_expr.hpp"

namespace trajcost {

/// A published cost function, ready to evaluate. `spec` is the linear
/// weighted part; XD1 additionally carries the conditional-weight
/// extension evaluated by evaluate_xd1.
struct NamedCost {
  std::string name;
  CostSpec spec;
  bool du_extension = false;
  std::string note;
};

/// The built-in entries: FM1, XD1, JW1, RA1, RA2, KC1.
const std::vector<NamedCost>& named_cost_catalog();

/// Throws std::out_of_range for unknown names.
const NamedCost& catalog_lookup(const std::string& name);

/// FM1 with explicit weights. The jerk and energy weights default equal
/// but are independent parameters.
CostSpec fm1_spec(double w_accel = 1.0, double w_jerk = 1.0,
                  double w_energy = 1.0);

/// Dangerous-state trigger:
/// (a_tan > 0) and ((a > a_max) or (d > d_thresh) or (theta_err > theta_thresh)).
/// d and theta_err are the signed lane and heading offsets.
bool du_condition1(const StateSample& sample, double lane_offset,
                   double theta_err, const DuWeightConfig& cfg);

/// The three state-dependent weights at one sample:
/// w5 = w5_0 when a > a_max, w6 = w6_0 under condition1,
/// w7 = w7_0 otherwise. w6 and w7 partition time.
struct DuTimeWeights {
  double w5 = 0.0;
  double w6 = 0.0;
  double w7 = 0.0;
};
DuTimeWeights du_time_weights(const StateSample& sample, double lane_offset,
                              double theta_err, const DuWeightConfig& cfg);

/// Full XD1 evaluation: the linear terms [(LC|1),(O|1),(SR|1)] plus the
/// w4 a_tan^2 integral and the three conditionally weighted integrals,
/// all trapezoidal. Requires a scenario with a desired-heading profile.
CostBreakdown evaluate_xd1(const Trajectory& trajectory,
                           const EvaluationContext& ctx,
                           const DuWeightConfig& cfg);

}  // namespace trajcost
