#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "trajcost/cost_expr.hpp"
#include "trajcost/scenario.hpp"

namespace trajcost {

struct Violation {
  std::string constraint;    // "collision", "speed_limit", "goal", ...
  std::size_t sample_index;  // first offending sample
  double magnitude;          // how far past the bound at that sample
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Violation> violations;  // empty iff feasible
};

/// Stand-in for dynamic-model feasibility: pure kinematic bounds.
struct KinematicBounds {
  std::optional<double> a_max;      // |a| bound [m/s^2]
  std::optional<double> delta_max;  // |delta| bound [rad]
};

/// Hard-constraint check. In order: collision of the disc ego footprint
/// against every obstacle at every sample (clearance must stay > 0),
/// speed limit, goal membership of the final sample (plus its time
/// window when given), response-ratio clearance (clearance >=
/// v * t_response / max_ratio) and kinematic bounds. Violations are
/// data, not errors; each constraint reports its first offending sample.
FeasibilityReport check_constraints(
    const Trajectory& trajectory, const Scenario& scenario,
    const std::optional<ResponseRatioConfig>& response = std::nullopt,
    const std::optional<KinematicBounds>& bounds = std::nullopt);

class NoFeasibleCandidateError : public std::runtime_error {
 public:
  NoFeasibleCandidateError(std::string message,
                           std::vector<FeasibilityReport> reports)
      : std::runtime_error(std::move(message)), reports_(std::move(reports)) {}

  const std::vector<FeasibilityReport>& reports() const { return reports_; }

 private:
  std::vector<FeasibilityReport> reports_;
};

struct SelectionResult {
  std::size_t index = 0;
  CostBreakdown breakdown;
  std::vector<FeasibilityReport> reports;  // one per candidate, input order
};

/// Argmin selection: evaluates only feasible candidates and returns the
/// minimum-cost one, ties broken by lowest index. When the spec contains
/// leading-vehicle terms and the context carries none, the per-candidate
/// context is derived from the scenario trace. Throws
/// NoFeasibleCandidateError (carrying every report) when nothing passes.
SelectionResult select_best(
    const std::vector<Trajectory>& candidates, const CostSpec& spec,
    const EvaluationContext& ctx, const Scenario& scenario,
    const std::optional<KinematicBounds>& bounds = std::nullopt);

/// Same selection loop over an arbitrary evaluator (used for cost
/// functions with non-linear extensions).
using CandidateEvaluator =
    std::function<CostBreakdown(const Trajectory&, const EvaluationContext&)>;

SelectionResult select_best_with(
    const std::vector<Trajectory>& candidates, const CandidateEvaluator& eval,
    bool needs_leading_vehicle, const EvaluationContext& ctx,
    const Scenario& scenario,
    const std::optional<KinematicBounds>& bounds = std::nullopt);

}  // namespace trajcost
