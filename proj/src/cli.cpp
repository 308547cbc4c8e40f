#include "trajcost/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "trajcost/catalog.hpp"
#include "trajcost/errors.hpp"
#include "trajcost/io.hpp"
#include "trajcost/sweep.hpp"

namespace trajcost {

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;
constexpr int kParse = 3;
constexpr int kInfeasible = 4;
constexpr int kMissingContext = 5;

double parse_number(const std::string& text, const std::string& what) {
  double value = 0.0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    throw ParseError(what + ": '" + text + "' is not a finite number");
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string piece;
  std::istringstream in(text);
  while (std::getline(in, piece, sep)) out.push_back(piece);
  return out;
}

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& what) {
  std::vector<double> out;
  if (text.empty()) return out;
  for (const auto& piece : split(text, ',')) {
    out.push_back(parse_number(piece, what));
  }
  return out;
}

WeightMap parse_weight_map(const std::string& text) {
  WeightMap weights;
  for (const auto& piece : split(text, ',')) {
    const auto eq = piece.find('=');
    if (eq == std::string::npos) {
      throw ParseError("weight list: expected ID=value, got '" + piece + "'");
    }
    const std::string token = piece.substr(0, eq);
    const auto id = cost_id_from_token(token);
    if (!id) {
      throw ParseError("weight list: unknown partial '" + token + "'");
    }
    weights.emplace_back(*id, parse_number(piece.substr(eq + 1), "weight"));
  }
  if (weights.empty()) {
    throw ParseError("weight list: no entries");
  }
  return weights;
}

// "start:stop:count" (count uniform points, inclusive) or a comma list.
std::vector<double> parse_grid(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
      throw ParseError("grid: expected start:stop:count");
    }
    const double start = parse_number(parts[0], "grid start");
    const double stop = parse_number(parts[1], "grid stop");
    const double count_val = parse_number(parts[2], "grid count");
    const int count = static_cast<int>(count_val);
    if (count < 1 || count_val != count) {
      throw ParseError("grid: count must be a positive integer");
    }
    std::vector<double> grid(count);
    for (int i = 0; i < count; ++i) {
      grid[i] = count == 1
                    ? start
                    : start + (stop - start) * static_cast<double>(i) /
                          static_cast<double>(count - 1);
    }
    return grid;
  }
  auto grid = parse_double_list(text, "grid value");
  if (grid.empty()) throw ParseError("grid: no values");
  return grid;
}

std::vector<CostId> parse_metric_ids(const std::string& text) {
  std::vector<CostId> ids;
  for (const auto& piece : split(text, ',')) {
    const auto id = cost_id_from_token(piece);
    if (!id) throw ParseError("metrics: unknown partial '" + piece + "'");
    ids.push_back(*id);
  }
  if (ids.empty()) throw ParseError("metrics: no entries");
  return ids;
}

struct ResolvedCost {
  CostSpec spec;
  bool du_extension = false;
  std::string display;
};

ResolvedCost resolve_cost(const std::string& text) {
  if (!text.empty() && text[0] == '@') {
    const std::string name = text.substr(1);
    try {
      const NamedCost& entry = catalog_lookup(name);
      return {entry.spec, entry.du_extension,
              "@" + name + " = " + format_cost_expr(entry.spec)};
    } catch (const std::out_of_range& e) {
      throw ParseError(std::string(e.what()) +
                       " (run 'trajcost catalog' for the available names)");
    }
  }
  CostSpec spec = parse_cost_expr(text);
  std::string display = format_cost_expr(spec);
  return {std::move(spec), false, std::move(display)};
}

constexpr const char* kBuiltinScenario = "builtin:reference";

ScenarioFile resolve_scenario(const std::string& arg) {
  if (arg == kBuiltinScenario) {
    return ScenarioFile{make_reference_scenario(), std::nullopt, std::nullopt};
  }
  return load_scenario(arg);
}

// Candidate-generation flags shared by select, sweep and rank, with the
// reference configuration as defaults.
struct CandidateFlags {
  std::string offsets;
  double horizon;
  double speed;
  double spacing;
  double start_s;
  double start_d;
  double start_heading;

  CandidateFlags() {
    const CandidateConfig ref = reference_candidate_config();
    std::string list;
    for (std::size_t i = 0; i < ref.lateral_offsets.size(); ++i) {
      if (i) list += ',';
      list += format_double(ref.lateral_offsets[i]);
    }
    offsets = list;
    horizon = ref.horizon;
    speed = ref.speed;
    spacing = ref.sample_spacing;
    const CandidateStart start = reference_start();
    start_s = start.s;
    start_d = start.d;
    start_heading = start.heading;
  }

  void add_to(CLI::App* cmd) {
    cmd->add_option("--offsets", offsets,
                    "comma-separated terminal lateral offsets [m]");
    cmd->add_option("--horizon", horizon, "planning distance along s [m]");
    cmd->add_option("--speed", speed, "progress speed along s [m/s]");
    cmd->add_option("--spacing", spacing, "sample spacing along s [m]");
    cmd->add_option("--start-s", start_s, "start arc length [m]");
    cmd->add_option("--start-d", start_d, "start lateral offset [m]");
    cmd->add_option("--start-heading", start_heading,
                    "start heading [rad]");
  }

  CandidateConfig config() const {
    CandidateConfig cfg;
    cfg.lateral_offsets = parse_double_list(offsets, "offset");
    cfg.horizon = horizon;
    cfg.speed = speed;
    cfg.sample_spacing = spacing;
    return cfg;
  }

  CandidateStart start() const { return {start_s, start_d, start_heading}; }

  std::string describe() const {
    std::string s = "offsets=" + offsets;
    s += ";horizon=" + format_double(horizon);
    s += ";speed=" + format_double(speed);
    s += ";spacing=" + format_double(spacing);
    s += ";start_s=" + format_double(start_s);
    s += ";start_d=" + format_double(start_d);
    s += ";start_heading=" + format_double(start_heading);
    return s;
  }
};

void print_breakdown(std::ostream& out, const CostBreakdown& breakdown) {
  out << "term,weight,raw,contribution\n";
  for (const auto& term : breakdown.terms) {
    out << term.label << ',' << format_double(term.weight) << ','
        << format_double(term.raw) << ',' << format_double(term.contribution)
        << '\n';
  }
  out << "total: " << format_double(breakdown.total) << '\n';
}

void print_report(std::ostream& out, const FeasibilityReport& report) {
  if (report.feasible) {
    out << "feasibility: feasible\n";
    return;
  }
  out << "feasibility: infeasible\n";
  for (const auto& v : report.violations) {
    out << "  " << v.constraint << " at sample " << v.sample_index << ": "
        << format_double(v.magnitude) << '\n';
  }
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
}

std::string describe_weights(const WeightMap& weights) {
  std::vector<CostTerm> terms;
  terms.reserve(weights.size());
  for (const auto& [id, w] : weights) terms.push_back({id, w});
  return format_cost_expr(CostSpec(std::move(terms)));
}

int cmd_catalog(std::ostream& out) {
  for (const auto& entry : named_cost_catalog()) {
    out << entry.name << "  " << format_cost_expr(entry.spec);
    if (entry.du_extension) out << "  (+ conditional-weight extension)";
    out << "\n    " << entry.note << '\n';
  }
  return kOk;
}

struct EvaluateArgs {
  std::string scenario_path;
  std::string trajectory_path;
  std::string cost;
  std::string previous_path;
  double response_time = 0.0;
  double response_ratio = 0.0;
};

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out,
                 std::ostream& err) {
  const ScenarioFile file = resolve_scenario(args.scenario_path);
  const LoadedTrajectory loaded = load_trajectory(args.trajectory_path);
  const ResolvedCost cost = resolve_cost(args.cost);

  std::optional<LoadedTrajectory> previous;
  if (!args.previous_path.empty()) {
    previous = load_trajectory(args.previous_path);
  }

  EvaluationContext ctx;
  ctx.scenario = &file.scenario;
  ctx.fuel_model = file.fuel_model;
  ctx.du_config = file.du_config;
  ctx.traction_force = loaded.traction_force;
  if (previous) ctx.previous_trajectory = &previous->trajectory;
  if (args.response_time > 0.0 && args.response_ratio > 0.0) {
    ctx.response_config =
        ResponseRatioConfig{args.response_time, args.response_ratio};
  }
  if ((cost.spec.uses(CostId::LV) || cost.spec.uses(CostId::BD)) &&
      file.scenario.leading_vehicle()) {
    ctx.leading_vehicle =
        make_leading_context(loaded.trajectory, file.scenario);
  }

  std::vector<std::string> gaps = missing_context(cost.spec, ctx);
  if (cost.du_extension && !ctx.du_config) {
    gaps.push_back("XD1 requires a du_config section in the scenario");
  }
  if (!gaps.empty()) {
    err << "missing context:\n";
    for (const auto& gap : gaps) err << "  " << gap << '\n';
    return kMissingContext;
  }

  out << "cost: " << cost.display << '\n';
  const CostBreakdown breakdown =
      cost.du_extension
          ? evaluate_xd1(loaded.trajectory, ctx, *ctx.du_config)
          : evaluate(cost.spec, loaded.trajectory, ctx);
  print_breakdown(out, breakdown);
  print_report(out, check_constraints(loaded.trajectory, file.scenario,
                                      ctx.response_config));
  return kOk;
}

struct SelectArgs {
  std::string scenario_path;
  std::string cost;
  std::string output = "selected.csv";
  std::string previous_path;
  CandidateFlags candidates;
  double response_time = 0.0;
  double response_ratio = 0.0;
  double a_max = 0.0;
  double delta_max = 0.0;
};

int cmd_select(const SelectArgs& args, std::ostream& out, std::ostream& err) {
  const CandidateConfig config = args.candidates.config();
  if (config.lateral_offsets.empty()) {
    err << "error: --offsets needs at least one value\n";
    return kUsage;
  }
  const ScenarioFile file = resolve_scenario(args.scenario_path);
  const ResolvedCost cost = resolve_cost(args.cost);
  const Scenario& scenario = file.scenario;

  const std::vector<Trajectory> candidates =
      generate_candidates(scenario.frame(), args.candidates.start(), config);

  std::optional<LoadedTrajectory> previous_file;
  std::optional<Trajectory> previous_follow;
  EvaluationContext ctx;
  ctx.scenario = &scenario;
  ctx.fuel_model = file.fuel_model;
  ctx.du_config = file.du_config;
  if (args.response_time > 0.0 && args.response_ratio > 0.0) {
    ctx.response_config =
        ResponseRatioConfig{args.response_time, args.response_ratio};
  }
  if (!args.previous_path.empty()) {
    previous_file = load_trajectory(args.previous_path);
    ctx.previous_trajectory = &previous_file->trajectory;
  } else if (cost.spec.uses(CostId::C)) {
    // No previous planning cycle given: use the path-following candidate.
    CandidateConfig follow = config;
    follow.lateral_offsets = {0.0};
    previous_follow = std::move(
        generate_candidates(scenario.frame(), args.candidates.start(), follow)
            .front());
    ctx.previous_trajectory = &*previous_follow;
  }
  if (cost.du_extension && !ctx.du_config) {
    err << "missing context:\n  XD1 requires a du_config section in the "
           "scenario\n";
    return kMissingContext;
  }

  std::optional<KinematicBounds> bounds;
  if (args.a_max > 0.0 || args.delta_max > 0.0) {
    KinematicBounds kb;
    if (args.a_max > 0.0) kb.a_max = args.a_max;
    if (args.delta_max > 0.0) kb.delta_max = args.delta_max;
    bounds = kb;
  }

  const bool needs_lv =
      cost.spec.uses(CostId::LV) || cost.spec.uses(CostId::BD);
  SelectionResult result =
      cost.du_extension
          ? select_best_with(
                candidates,
                [&](const Trajectory& traj, const EvaluationContext& local) {
                  return evaluate_xd1(traj, local, *local.du_config);
                },
                needs_lv, ctx, scenario, bounds)
          : select_best(candidates, cost.spec, ctx, scenario, bounds);

  out << "cost: " << cost.display << '\n';
  out << "selected candidate " << result.index << " (terminal offset "
      << format_double(config.lateral_offsets[result.index]) << " m)\n";
  print_breakdown(out, result.breakdown);
  save_trajectory(args.output, candidates[result.index]);
  out << "wrote " << args.output << '\n';
  return kOk;
}

struct SweepArgs {
  std::string scenario_path = kBuiltinScenario;
  std::string base = "LC=0.17,D=0.2,C=0.02,L=0.7,K=0.01";
  std::string swept = "LC";
  std::string grid = "0:1:11";
  std::string output = "sweep.csv";
  CandidateFlags candidates;
};

int cmd_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
  const WeightMap base = parse_weight_map(args.base);
  const auto swept = cost_id_from_token(args.swept);
  if (!swept) {
    err << "error: unknown swept partial '" << args.swept << "'\n";
    return kUsage;
  }
  const bool member =
      std::any_of(base.begin(), base.end(),
                  [&](const auto& p) { return p.first == *swept; });
  if (!member) {
    err << "error: swept partial '" << args.swept
        << "' is not part of the base weights\n";
    return kUsage;
  }

  const ScenarioFile file = resolve_scenario(args.scenario_path);
  SweepConfig cfg;
  cfg.base_weights = base;
  cfg.swept_id = *swept;
  cfg.grid = parse_grid(args.grid);
  cfg.scenario = &file.scenario;
  cfg.candidate_config = args.candidates.config();
  cfg.start = args.candidates.start();

  const std::vector<MetricRow> rows = run_sweep(cfg);

  std::string table;
  table += "# trajcost sweep\n";
  table += "# scenario: " + args.scenario_path + "\n";
  table += "# base: " + describe_weights(base) + "\n";
  table += "# swept: " + std::string(to_token(*swept)) + "\n";
  std::string grid_str;
  for (std::size_t i = 0; i < cfg.grid.size(); ++i) {
    if (i) grid_str += ',';
    grid_str += format_double(cfg.grid[i]);
  }
  table += "# grid: " + grid_str + "\n";
  table += "# candidates: " + args.candidates.describe() + "\n";
  table +=
      "# metrics: unweighted partials of the selected candidate "
      "(lane_center=LC, obstacle_distance=D, speed=L, curvature=K)\n";
  table +=
      "swept_value,feasible,winner,lane_center,obstacle_distance,speed,"
      "curvature\n";
  for (const auto& row : rows) {
    table += format_double(row.swept_value);
    table += row.feasible ? ",1," : ",0,";
    table += row.feasible ? std::to_string(row.winner_index) : std::string("-");
    table += ',' + format_double(row.lane_center);
    table += ',' + format_double(row.obstacle_distance);
    table += ',' + format_double(row.speed);
    table += ',' + format_double(row.curvature);
    table += '\n';
  }
  write_file(args.output, table);
  out << "wrote " << rows.size() << " rows to " << args.output << '\n';
  return kOk;
}

struct RankArgs {
  std::string scenario_path = kBuiltinScenario;
  std::vector<std::string> sets;
  std::string metrics = "LC,D,L,K";
  std::string output;
  CandidateFlags candidates;
};

int cmd_rank(const RankArgs& args, std::ostream& out, std::ostream& err) {
  if (args.sets.empty()) {
    err << "error: at least one --set LABEL=WEIGHTS is required\n";
    return kUsage;
  }
  std::vector<WeightSet> sets;
  for (const auto& text : args.sets) {
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ParseError("--set: expected LABEL=WEIGHTS, got '" + text + "'");
    }
    WeightSet set;
    set.label = text.substr(0, eq);
    const std::string value = text.substr(eq + 1);
    if (!value.empty() && value[0] == '@') {
      const ResolvedCost cost = resolve_cost(value);
      if (cost.du_extension) {
        throw ParseError(
            "--set: '" + value +
            "' carries a non-linear extension and cannot be ranked");
      }
      for (const auto& term : cost.spec.terms()) {
        set.weights.emplace_back(term.id, term.weight);
      }
    } else {
      set.weights = parse_weight_map(value);
    }
    sets.push_back(std::move(set));
  }

  const ScenarioFile file = resolve_scenario(args.scenario_path);
  const std::vector<CostId> metric_ids = parse_metric_ids(args.metrics);
  const std::vector<RankEntry> ranking =
      rank_weight_sets(sets, metric_ids, file.scenario,
                       args.candidates.config(), args.candidates.start());

  std::string table;
  table += "# trajcost rank\n";
  table += "# scenario: " + args.scenario_path + "\n";
  table += "# metrics: " + args.metrics + "\n";
  table +=
      "# score: mean of min-max normalized metrics across the sets; the "
      "path-length metric (L) is inverted so faster progress scores "
      "lower; lower score = better\n";
  table += "# candidates: " + args.candidates.describe() + "\n";
  table +=
      "rank,label,score,feasible,lane_center,obstacle_distance,speed,"
      "curvature\n";
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    const RankEntry& e = ranking[i];
    table += std::to_string(i + 1) + ',' + e.label + ',' +
             format_double(e.score) + ',' + (e.feasible ? "1" : "0") + ',' +
             format_double(e.lane_center) + ',' +
             format_double(e.obstacle_distance) + ',' +
             format_double(e.speed) + ',' + format_double(e.curvature) + '\n';
  }
  out << table;
  if (!args.output.empty()) {
    write_file(args.output, table);
    out << "wrote " << args.output << '\n';
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"trajcost - trajectory cost evaluation toolkit"};
  app.require_subcommand(1);
  int code = kOk;

  auto* evaluate_cmd = app.add_subcommand(
      "evaluate", "evaluate a cost function on a stored trajectory");
  auto eval_args = std::make_shared<EvaluateArgs>();
  evaluate_cmd->add_option("scenario", eval_args->scenario_path,
                           "scenario file (or builtin:reference)")
      ->required();
  evaluate_cmd->add_option("trajectory", eval_args->trajectory_path,
                           "trajectory CSV")
      ->required();
  evaluate_cmd->add_option("--cost", eval_args->cost,
                           "cost expression [(X|w),...] or @NAME")
      ->required();
  evaluate_cmd->add_option("--previous", eval_args->previous_path,
                           "previous-cycle trajectory CSV (for C)");
  evaluate_cmd->add_option("--response-time", eval_args->response_time,
                           "planner response time [s]");
  evaluate_cmd->add_option("--response-max-ratio", eval_args->response_ratio,
                           "bound on v*T/clearance");
  evaluate_cmd->callback(
      [&, eval_args]() { code = cmd_evaluate(*eval_args, out, err); });

  auto* select_cmd = app.add_subcommand(
      "select", "generate candidates and write the minimum-cost one");
  auto select_args = std::make_shared<SelectArgs>();
  select_cmd->add_option("scenario", select_args->scenario_path,
                         "scenario file (or builtin:reference)")
      ->required();
  select_cmd->add_option("--cost", select_args->cost,
                         "cost expression [(X|w),...] or @NAME")
      ->required();
  select_cmd->add_option("-o,--output", select_args->output,
                         "output trajectory CSV");
  select_cmd->add_option("--previous", select_args->previous_path,
                         "previous-cycle trajectory CSV (for C)");
  select_cmd->add_option("--response-time", select_args->response_time,
                         "planner response time [s]");
  select_cmd->add_option("--response-max-ratio", select_args->response_ratio,
                         "bound on v*T/clearance");
  select_cmd->add_option("--a-max", select_args->a_max,
                         "kinematic bound on |a| [m/s^2]");
  select_cmd->add_option("--delta-max", select_args->delta_max,
                         "kinematic bound on |delta| [rad]");
  select_args->candidates.add_to(select_cmd);
  select_cmd->callback(
      [&, select_args]() { code = cmd_select(*select_args, out, err); });

  auto* sweep_cmd = app.add_subcommand(
      "sweep", "sweep one weight over a grid and tabulate the metrics");
  auto sweep_args = std::make_shared<SweepArgs>();
  sweep_cmd->add_option("scenario", sweep_args->scenario_path,
                        "scenario file (default builtin:reference)");
  sweep_cmd->add_option("--base", sweep_args->base,
                        "base weights, e.g. LC=0.17,D=0.2");
  sweep_cmd->add_option("--sweep", sweep_args->swept, "partial to sweep");
  sweep_cmd->add_option("--grid", sweep_args->grid,
                        "start:stop:count or comma list");
  sweep_cmd->add_option("-o,--output", sweep_args->output, "output table");
  sweep_args->candidates.add_to(sweep_cmd);
  sweep_cmd->callback(
      [&, sweep_args]() { code = cmd_sweep(*sweep_args, out, err); });

  auto* rank_cmd =
      app.add_subcommand("rank", "rank weight sets on one scenario");
  auto rank_args = std::make_shared<RankArgs>();
  rank_cmd->add_option("scenario", rank_args->scenario_path,
                       "scenario file (default builtin:reference)");
  rank_cmd->add_option("--set", rank_args->sets,
                       "LABEL=WEIGHTS or LABEL=@NAME (repeatable)");
  rank_cmd->add_option("--metrics", rank_args->metrics,
                       "metrics to score, from LC,D,L,K");
  rank_cmd->add_option("-o,--output", rank_args->output, "output table");
  rank_args->candidates.add_to(rank_cmd);
  rank_cmd->callback(
      [&, rank_args]() { code = cmd_rank(*rank_args, out, err); });

  auto* catalog_cmd = app.add_subcommand(
      "catalog", "list the named cost functions and their definitions");
  catalog_cmd->callback([&]() { code = cmd_catalog(out); });

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("trajcost");
  for (const auto& arg : args) argv.push_back(arg.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const MissingContextError& e) {
    err << "missing context: " << e.what() << '\n';
    return kMissingContext;
  } catch (const NoOverlapError& e) {
    err << "missing context: " << e.what() << '\n';
    return kMissingContext;
  } catch (const NoFeasibleCandidateError& e) {
    err << "no feasible candidate\n";
    const auto& reports = e.reports();
    for (std::size_t i = 0; i < reports.size(); ++i) {
      err << "  candidate " << i << ':';
      for (const auto& v : reports[i].violations) {
        err << ' ' << v.constraint << "@s" << v.sample_index;
      }
      err << '\n';
    }
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return code;
}

}  // namespace trajcost
