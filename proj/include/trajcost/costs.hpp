#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trajcost/context.hpp"
#include "trajcost/frenet.hpp"
#include "trajcost/obstacles.hpp"
#include "trajcost/scenario.hpp"
#include "trajcost/trajectory.hpp"

namespace trajcost {

/// Identifiers of the partial cost functions. A..L are running costs,
/// T/TO/TG terminal costs, K/C/LV/BD the literature extensions
/// (max curvature, consistency, leading-vehicle gap, brake distance).
enum class CostId {
  A, J, SA, SR, E, Y, LC, V, O, D, L,  // running
  T, TO, TG,                           // terminal
  K, C, LV, BD                         // extensions
};

inline constexpr std::size_t kCostIdCount = 18;

enum class CostKind { kRunning, kTerminal, kExtension };

struct CostInfo {
  CostId id;
  std::string_view token;
  CostKind kind;
  std::string_view description;
};

const std::array<CostInfo, kCostIdCount>& cost_registry();
const CostInfo& cost_info(CostId id);
std::string_view to_token(CostId id);

/// Token lookup, case-sensitive. "K" and the UTF-8 spelling of kappa are
/// both accepted for the curvature cost.
std::optional<CostId> cost_id_from_token(std::string_view token);

/// Reason the context cannot serve this partial, empty when satisfied.
std::string context_gap(CostId id, const EvaluationContext& ctx);

/// Trapezoidal integral of a per-sample integrand over the trajectory's
/// own timestamps. Exact for integrands linear between samples.
double integrate_trapezoid(const Trajectory& trajectory,
                           const std::vector<double>& integrand);

/// Curvilinear projection of every sample onto a frame.
std::vector<FrenetPoint> project_onto(const Trajectory& trajectory,
                                      const FrenetFrame& frame);

/// Running costs of the composable set (A, J, SA, SR, E, Y, LC, V, O, D, L):
/// trapezoidal approximation of the row's integral over [t0, tf].
double running_cost(CostId id, const Trajectory& trajectory,
                    const EvaluationContext& ctx);

/// Terminal costs: T = tf, TO = d^2(tf), TG = squared distance from the
/// final position to the goal region (0 inside).
double terminal_cost(CostId id, const Trajectory& trajectory,
                     const EvaluationContext& ctx);

/// Integral of the clipped proximity penalty max_i(1 - dist_i/d_influence),
/// clamped to [0, 1] per obstacle. Empty sets cost 0.
double obstacle_proximity(const Trajectory& trajectory,
                          const ObstacleSet& obstacles);

/// Largest pointwise |curvature| along the trajectory.
double max_curvature_cost(const Trajectory& trajectory);

/// Mean lateral distance between two trajectories over their shared
/// base-path arc-length interval [s1, s2]. Unweighted; composition
/// weights are applied by the cost-expression evaluator.
/// Throws NoOverlapError when the interval is empty.
double consistency_cost(const Trajectory& current, const Trajectory& previous,
                        const FrenetFrame& frame);

/// Integral of the squared gap error (d_l_des - d_l)^2 with
/// d_l_des = d_l_min + k_gain * v.
double gap_cost(const Trajectory& trajectory, const LeadingVehicleContext& lv);

/// Integral of the squared brake-distance margin
/// (d_l + v_l^2/(2 a_maxdec) - v T - v^2/(2 a_maxdec))^2.
double brake_distance_cost(const Trajectory& trajectory,
                           const LeadingVehicleContext& lv);

/// Engine power P = F v / eta and the companion fuel flow P / (H rho).
FuelPower fuel_power(double traction_force, double speed,
                     const FuelModel& model);

/// Unified dispatch over all 18 partials; validates context requirements
/// and throws MissingContextError naming the offending term.
double evaluate_partial(CostId id, const Trajectory& trajectory,
                        const EvaluationContext& ctx);

}  // namespace trajcost
