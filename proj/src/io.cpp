#include "trajcost/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "trajcost/cost_expr.hpp"
#include "trajcost/errors.hpp"

namespace trajcost {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& name, const std::string& what,
                       std::size_t position = 0) {
  throw ParseError(name + ": " + what, position);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

double number_at(const json& j, const std::string& field,
                 const std::string& name) {
  if (!j.is_number()) fail(name, "field '" + field + "' must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(name, "field '" + field + "' is not finite");
  return v;
}

Vec2 point_at(const json& j, const std::string& field,
              const std::string& name) {
  if (!j.is_array() || j.size() != 2) {
    fail(name, "field '" + field + "' must be a [x, y] pair");
  }
  return {number_at(j[0], field, name), number_at(j[1], field, name)};
}

std::vector<Vec2> point_list(const json& j, const std::string& field,
                             const std::string& name) {
  if (!j.is_array()) fail(name, "field '" + field + "' must be an array");
  std::vector<Vec2> out;
  out.reserve(j.size());
  for (const auto& item : j) out.push_back(point_at(item, field, name));
  return out;
}

PiecewiseLinearProfile profile_at(const json& j, const std::string& field,
                                  const std::string& name) {
  if (!j.is_array()) {
    fail(name, "field '" + field + "' must be an array of [s, value] pairs");
  }
  std::vector<std::pair<double, double>> knots;
  knots.reserve(j.size());
  for (const auto& item : j) {
    const Vec2 p = point_at(item, field, name);
    knots.emplace_back(p.x, p.y);
  }
  try {
    return PiecewiseLinearProfile(std::move(knots));
  } catch (const std::invalid_argument& e) {
    fail(name, "field '" + field + "': " + e.what());
  }
}

ObstacleShape shape_at(const json& j, const std::string& field,
                       const std::string& name) {
  if (!j.is_object() || !j.contains("type")) {
    fail(name, "field '" + field + "' must be an object with a 'type'");
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "disc") {
    if (!j.contains("center") || !j.contains("radius")) {
      fail(name, "field '" + field + "': disc needs 'center' and 'radius'");
    }
    return Disc{point_at(j["center"], field + ".center", name),
                number_at(j["radius"], field + ".radius", name)};
  }
  if (type == "polygon") {
    if (!j.contains("vertices")) {
      fail(name, "field '" + field + "': polygon needs 'vertices'");
    }
    return ConvexPolygon{point_list(j["vertices"], field + ".vertices", name)};
  }
  fail(name, "field '" + field + "': unknown shape type '" + type + "'");
}

}  // namespace

ScenarioFile parse_scenario_json(const std::string& text,
                                 const std::string& name) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(name + ": " + e.what(), e.byte);
  }
  if (!doc.is_object()) fail(name, "document must be a JSON object");

  ScenarioParams params;
  if (!doc.contains("base_path")) fail(name, "missing field 'base_path'");
  params.base_path = point_list(doc["base_path"], "base_path", name);

  if (!doc.contains("speed_limit")) fail(name, "missing field 'speed_limit'");
  params.speed_limit = number_at(doc["speed_limit"], "speed_limit", name);

  if (!doc.contains("goal")) fail(name, "missing field 'goal'");
  params.goal.shape = shape_at(doc["goal"], "goal", name);
  if (doc["goal"].contains("time_window")) {
    const Vec2 w = point_at(doc["goal"]["time_window"], "goal.time_window", name);
    params.goal.time_window = std::make_pair(w.x, w.y);
  }

  if (doc.contains("obstacles")) {
    const auto& obs = doc["obstacles"];
    if (!obs.is_object()) fail(name, "field 'obstacles' must be an object");
    if (obs.contains("d_influence")) {
      params.obstacles.d_influence =
          number_at(obs["d_influence"], "obstacles.d_influence", name);
    }
    if (obs.contains("items")) {
      if (!obs["items"].is_array()) {
        fail(name, "field 'obstacles.items' must be an array");
      }
      for (const auto& item : obs["items"]) {
        params.obstacles.obstacles.push_back(
            shape_at(item, "obstacles.items", name));
      }
    }
  }

  if (doc.contains("profiles")) {
    const auto& prof = doc["profiles"];
    if (!prof.is_object()) fail(name, "field 'profiles' must be an object");
    if (prof.contains("v_des")) {
      params.v_des = profile_at(prof["v_des"], "profiles.v_des", name);
    }
    if (prof.contains("theta_des")) {
      params.theta_des =
          profile_at(prof["theta_des"], "profiles.theta_des", name);
    }
  }

  if (doc.contains("leading_vehicle")) {
    const auto& lv = doc["leading_vehicle"];
    if (!lv.is_object() || !lv.contains("s_of_t") || !lv.contains("v_of_t")) {
      fail(name,
           "field 'leading_vehicle' must be an object with 's_of_t' and "
           "'v_of_t'");
    }
    LeadingVehicleTrace trace;
    trace.s_of_t = profile_at(lv["s_of_t"], "leading_vehicle.s_of_t", name);
    trace.v_of_t = profile_at(lv["v_of_t"], "leading_vehicle.v_of_t", name);
    if (lv.contains("d_l_min"))
      trace.d_l_min = number_at(lv["d_l_min"], "leading_vehicle.d_l_min", name);
    if (lv.contains("k_gain"))
      trace.k_gain = number_at(lv["k_gain"], "leading_vehicle.k_gain", name);
    if (lv.contains("a_maxdec"))
      trace.a_maxdec =
          number_at(lv["a_maxdec"], "leading_vehicle.a_maxdec", name);
    if (lv.contains("t_response"))
      trace.t_response =
          number_at(lv["t_response"], "leading_vehicle.t_response", name);
    params.leading_vehicle = std::move(trace);
  }

  if (doc.contains("ego_radius")) {
    params.ego_radius = number_at(doc["ego_radius"], "ego_radius", name);
  }
  if (doc.contains("frenet_spacing")) {
    params.frenet_spacing =
        number_at(doc["frenet_spacing"], "frenet_spacing", name);
  }

  std::optional<FuelModel> fuel;
  if (doc.contains("fuel_model")) {
    const auto& fm = doc["fuel_model"];
    if (!fm.is_object() || !fm.contains("eta") || !fm.contains("H") ||
        !fm.contains("rho")) {
      fail(name, "field 'fuel_model' needs 'eta', 'H' and 'rho'");
    }
    fuel = FuelModel{number_at(fm["eta"], "fuel_model.eta", name),
                     number_at(fm["H"], "fuel_model.H", name),
                     number_at(fm["rho"], "fuel_model.rho", name)};
  }

  std::optional<DuWeightConfig> du;
  if (doc.contains("du_config")) {
    const auto& dc = doc["du_config"];
    if (!dc.is_object() || !dc.contains("a_max") || !dc.contains("v_max")) {
      fail(name, "field 'du_config' needs at least 'a_max' and 'v_max'");
    }
    DuWeightConfig cfg;
    cfg.a_max = number_at(dc["a_max"], "du_config.a_max", name);
    cfg.v_max = number_at(dc["v_max"], "du_config.v_max", name);
    if (dc.contains("d_thresh"))
      cfg.d_thresh = number_at(dc["d_thresh"], "du_config.d_thresh", name);
    if (dc.contains("theta_thresh"))
      cfg.theta_thresh =
          number_at(dc["theta_thresh"], "du_config.theta_thresh", name);
    if (dc.contains("w4")) cfg.w4 = number_at(dc["w4"], "du_config.w4", name);
    if (dc.contains("w5")) cfg.w5_0 = number_at(dc["w5"], "du_config.w5", name);
    if (dc.contains("w6")) cfg.w6_0 = number_at(dc["w6"], "du_config.w6", name);
    if (dc.contains("w7")) cfg.w7_0 = number_at(dc["w7"], "du_config.w7", name);
    du = cfg;
  }

  try {
    return ScenarioFile{Scenario(std::move(params)), fuel, du};
  } catch (const std::invalid_argument& e) {
    fail(name, e.what());
  }
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  return parse_scenario_json(read_file(path), path.string());
}

namespace {

const std::vector<std::string>& known_columns() {
  static const std::vector<std::string> columns = {
      "t", "x", "y", "v", "a", "a_tan", "jerk", "theta", "yaw_rate",
      "delta", "delta_rate", "F"};
  return columns;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    // trim surrounding whitespace
    const auto begin = field.find_first_not_of(" \t\r");
    const auto end = field.find_last_not_of(" \t\r");
    fields.push_back(begin == std::string::npos
                         ? std::string()
                         : field.substr(begin, end - begin + 1));
  }
  return fields;
}

void assign_column(StateSample& s, const std::string& column, double value) {
  if (column == "t") s.t = value;
  else if (column == "x") s.x = value;
  else if (column == "y") s.y = value;
  else if (column == "v") s.v = value;
  else if (column == "a") s.a = value;
  else if (column == "a_tan") s.a_tan = value;
  else if (column == "jerk") s.jerk = value;
  else if (column == "theta") s.theta = value;
  else if (column == "yaw_rate") s.yaw_rate = value;
  else if (column == "delta") s.delta = value;
  else if (column == "delta_rate") s.delta_rate = value;
}

}  // namespace

LoadedTrajectory parse_trajectory_csv(const std::string& text,
                                      const std::string& name) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;

  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    header = split_csv_line(line);
    break;
  }
  if (header.empty()) fail(name, "missing header row");
  for (const auto& column : header) {
    if (std::find(known_columns().begin(), known_columns().end(), column) ==
        known_columns().end()) {
      fail(name, "line " + std::to_string(line_no) + ": unknown column '" +
                     column + "'",
           line_no);
    }
  }
  auto has = [&](const std::string& column) {
    return std::find(header.begin(), header.end(), column) != header.end();
  };
  for (const char* required : {"t", "x", "y"}) {
    if (!has(required)) {
      fail(name, std::string("missing required column '") + required + "'");
    }
  }

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      fail(name, "line " + std::to_string(line_no) + ": expected " +
                     std::to_string(header.size()) + " fields, got " +
                     std::to_string(fields.size()),
           line_no);
    }
    std::vector<double> row(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i) {
      double value = 0.0;
      const auto result = std::from_chars(
          fields[i].data(), fields[i].data() + fields[i].size(), value);
      if (result.ec != std::errc{} ||
          result.ptr != fields[i].data() + fields[i].size()) {
        fail(name, "line " + std::to_string(line_no) + ": field '" +
                       header[i] + "' is not a number: '" + fields[i] + "'",
             line_no);
      }
      row[i] = value;
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) fail(name, "trajectory needs at least 2 rows");

  const bool derived_needed =
      !(has("v") && has("a") && has("a_tan") && has("jerk") && has("theta") &&
        has("yaw_rate") && has("delta") && has("delta_rate"));

  std::vector<StateSample> samples(rows.size());
  if (derived_needed) {
    std::vector<TimedPoint> points(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == "t") points[r].t = rows[r][c];
        if (header[c] == "x") points[r].x = rows[r][c];
        if (header[c] == "y") points[r].y = rows[r][c];
      }
    }
    try {
      samples = derive_kinematics(points).samples();
    } catch (const std::invalid_argument& e) {
      fail(name, e.what());
    }
  }

  // Columns present in the file overlay (or fill) the derived values.
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < header.size(); ++c) {
      assign_column(samples[r], header[c], rows[r][c]);
    }
  }

  LoadedTrajectory out{Trajectory(std::move(samples)), {}};
  if (has("F")) {
    const std::size_t fcol =
        std::find(header.begin(), header.end(), "F") - header.begin();
    out.traction_force.resize(rows.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      out.traction_force[r] = rows[r][fcol];
    }
  }
  return out;
}

LoadedTrajectory load_trajectory(const std::filesystem::path& path) {
  try {
    return parse_trajectory_csv(read_file(path), path.string());
  } catch (const std::invalid_argument& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string trajectory_to_csv(const Trajectory& trajectory,
                              const std::vector<double>& traction_force) {
  const bool with_force = !traction_force.empty();
  std::string out =
      "t,x,y,v,a,a_tan,jerk,theta,yaw_rate,delta,delta_rate";
  if (with_force) out += ",F";
  out += '\n';
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const StateSample& s = trajectory[i];
    const double fields[] = {s.t,     s.x,        s.y,     s.v,
                             s.a,     s.a_tan,    s.jerk,  s.theta,
                             s.yaw_rate, s.delta, s.delta_rate};
    for (std::size_t f = 0; f < std::size(fields); ++f) {
      if (f > 0) out += ',';
      out += format_double(fields[f]);
    }
    if (with_force) {
      out += ',';
      out += format_double(traction_force[i]);
    }
    out += '\n';
  }
  return out;
}

void save_trajectory(const std::filesystem::path& path,
                     const Trajectory& trajectory,
                     const std::vector<double>& traction_force) {
  if (!traction_force.empty() && traction_force.size() != trajectory.size()) {
    throw std::invalid_argument(
        "save_trajectory: traction force size does not match trajectory");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  out << trajectory_to_csv(trajectory, traction_force);
}

}  // namespace trajcost
