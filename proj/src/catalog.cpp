#include "trajcost/catalog.hpp"

#include <cmath>
#include <stdexcept>

#include "trajcost/errors.hpp"

namespace trajcost {

namespace {

std::vector<NamedCost> build_catalog() {
  std::vector<NamedCost> catalog;
  catalog.push_back({"FM1", fm1_spec(), false,
                     "acceleration + jerk + engine power; the source "
                     "publishes no weights, all default to 1"});
  catalog.push_back({"XD1",
                     CostSpec({{CostId::LC, 1.0},
                               {CostId::O, 1.0},
                               {CostId::SR, 1.0}}),
                     true,
                     "tracking + steering smoothness with state-dependent "
                     "acceleration and cruise-speed weights (needs du "
                     "config)"});
  catalog.push_back({"JW1",
                     CostSpec({{CostId::LV, 50.0},
                               {CostId::A, 10.0},
                               {CostId::BD, 30.0},
                               {CostId::D, 20.0}}),
                     false,
                     "freeway distance keeping: gap, comfort, braking "
                     "margin and clearance"});
  catalog.push_back({"RA1",
                     CostSpec({{CostId::D, 0.2},
                               {CostId::L, 0.2},
                               {CostId::LC, 0.17},
                               {CostId::K, 0.01},
                               {CostId::C, 0.02}}),
                     false,
                     "top-ranked weight set under the obstacle-distance/"
                     "lane-center ranking"});
  catalog.push_back({"RA2",
                     CostSpec({{CostId::D, 0.1},
                               {CostId::L, 0.7},
                               {CostId::LC, 0.17},
                               {CostId::K, 0.01},
                               {CostId::C, 0.02}}),
                     false,
                     "top-ranked weight set when speed and curvature are "
                     "also scored"});
  catalog.push_back({"KC1",
                     CostSpec({{CostId::D, 0.1},
                               {CostId::K, 0.01},
                               {CostId::C, 0.02}}),
                     false,
                     "clearance, curvature and consistency only"});
  return catalog;
}

void validate_du(const DuWeightConfig& cfg) {
  if (!(cfg.d_thresh > 0.0) || !(cfg.theta_thresh > 0.0)) {
    throw std::invalid_argument("du config thresholds must be positive");
  }
}

double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

const std::vector<NamedCost>& named_cost_catalog() {
  static const std::vector<NamedCost> catalog = build_catalog();
  return catalog;
}

const NamedCost& catalog_lookup(const std::string& name) {
  for (const auto& entry : named_cost_catalog()) {
    if (entry.name == name) return entry;
  }
  throw std::out_of_range("unknown named cost '" + name + "'");
}

CostSpec fm1_spec(double w_accel, double w_jerk, double w_energy) {
  return CostSpec(
      {{CostId::A, w_accel}, {CostId::J, w_jerk}, {CostId::E, w_energy}});
}

bool du_condition1(const StateSample& sample, double lane_offset,
                   double theta_err, const DuWeightConfig& cfg) {
  return sample.a_tan > 0.0 &&
         (sample.a > cfg.a_max || lane_offset > cfg.d_thresh ||
          theta_err > cfg.theta_thresh);
}

DuTimeWeights du_time_weights(const StateSample& sample, double lane_offset,
                              double theta_err, const DuWeightConfig& cfg) {
  DuTimeWeights w;
  w.w5 = sample.a > cfg.a_max ? cfg.w5_0 : 0.0;
  const bool cond = du_condition1(sample, lane_offset, theta_err, cfg);
  w.w6 = cond ? cfg.w6_0 : 0.0;
  w.w7 = cond ? 0.0 : cfg.w7_0;
  return w;
}

CostBreakdown evaluate_xd1(const Trajectory& traj,
                           const EvaluationContext& ctx,
                           const DuWeightConfig& cfg) {
  validate_du(cfg);
  if (ctx.scenario == nullptr) {
    throw MissingContextError("XD1", "XD1 requires a scenario");
  }
  if (ctx.scenario->theta_des().empty()) {
    throw MissingContextError(
        "XD1", "XD1 requires a desired-heading profile in the scenario");
  }

  CostBreakdown breakdown =
      evaluate(catalog_lookup("XD1").spec, traj, ctx);

  const auto pts = project_onto(traj, ctx.scenario->frame());
  const std::size_t n = traj.size();
  std::vector<double> f4(n), f5(n), f6(n), f7(n);
  for (std::size_t i = 0; i < n; ++i) {
    const StateSample& s = traj[i];
    const double theta_err =
        angle_diff(ctx.scenario->theta_des()(pts[i].s), s.theta);
    const bool cond = du_condition1(s, pts[i].d, theta_err, cfg);
    // Indicator-only integrands; the constant factors w4/w5_0/w6_0/w7_0
    // are reported as the term weights below.
    f4[i] = s.a_tan * s.a_tan;
    f5[i] = s.a > cfg.a_max ? s.a * s.a : 0.0;
    f6[i] = cond ? sgn(s.a_tan) * s.a_tan * s.a_tan : 0.0;
    const double dv = cfg.v_max - s.v;
    f7[i] = cond ? 0.0 : dv * dv;
  }

  const struct {
    const char* label;
    double weight;
    const std::vector<double>* integrand;
  } extras[] = {
      {"a_tan^2", cfg.w4, &f4},
      {"w5(t)*a^2", cfg.w5_0, &f5},
      {"w6(t)*sgn(a_tan)*a_tan^2", cfg.w6_0, &f6},
      {"w7(t)*(v_max-v)^2", cfg.w7_0, &f7},
  };
  for (const auto& extra : extras) {
    TermEvaluation te;
    te.label = extra.label;
    te.weight = extra.weight;
    te.raw = integrate_trapezoid(traj, *extra.integrand);
    te.contribution = te.weight * te.raw;
    breakdown.total += te.contribution;
    breakdown.terms.push_back(std::move(te));
  }
  return breakdown;
}

}  // namespace trajcost
