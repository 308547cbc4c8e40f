#include "trajcost/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trajcost {

PiecewiseLinearProfile::PiecewiseLinearProfile(
    std::vector<std::pair<double, double>> knots)
    : knots_(std::move(knots)) {
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i].first) || !std::isfinite(knots_[i].second)) {
      throw std::invalid_argument("profile knot is non-finite");
    }
    if (i > 0 && knots_[i].first <= knots_[i - 1].first) {
      throw std::invalid_argument(
          "profile knots must have strictly increasing abscissae");
    }
  }
}

double PiecewiseLinearProfile::operator()(double s) const {
  if (knots_.empty()) {
    throw std::logic_error("lookup on an empty profile");
  }
  if (s <= knots_.front().first) return knots_.front().second;
  if (s >= knots_.back().first) return knots_.back().second;
  auto it = std::upper_bound(
      knots_.begin(), knots_.end(), s,
      [](double value, const auto& knot) { return value < knot.first; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double u = (s - lo.first) / (hi.first - lo.first);
  return lo.second + u * (hi.second - lo.second);
}

double GoalRegion::distance_to(Vec2 p) const {
  return std::max(0.0, signed_clearance(p, shape));
}

Scenario::Scenario(ScenarioParams params)
    : params_(std::move(params)),
      path_(params_.base_path),
      frame_(path_, params_.frenet_spacing > 0.0 ? params_.frenet_spacing : 0.5) {
  if (!(params_.speed_limit > 0.0)) {
    throw std::invalid_argument("scenario speed limit must be positive");
  }
  if (!(params_.frenet_spacing > 0.0)) {
    throw std::invalid_argument("scenario frenet spacing must be positive");
  }
  if (params_.ego_radius < 0.0) {
    throw std::invalid_argument("scenario ego radius must be non-negative");
  }
  validate(params_.obstacles);
  validate_shape(params_.goal.shape);
  if (params_.goal.time_window &&
      params_.goal.time_window->second < params_.goal.time_window->first) {
    throw std::invalid_argument("scenario goal time window is inverted");
  }
  if (params_.leading_vehicle) {
    const auto& lv = *params_.leading_vehicle;
    if (lv.s_of_t.empty() || lv.v_of_t.empty()) {
      throw std::invalid_argument("leading vehicle trace profiles are empty");
    }
    if (!(lv.a_maxdec > 0.0)) {
      throw std::invalid_argument("leading vehicle a_maxdec must be positive");
    }
  }
}

}  // namespace trajcost
