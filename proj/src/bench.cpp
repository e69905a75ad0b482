#include "ahmp/bench.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <tuple>

#include "ahmp/error.hpp"

namespace ahmp {

std::vector<GoalSpec> generate_goals(const Scenario& scenario,
                                     std::uint64_t cell_seed,
                                     std::size_t count)
{
  const GoalRule& rule = scenario.goals;
  std::vector<GoalSpec> goals;
  goals.reserve(count);
  if (rule.mode == GoalRule::Mode::Explicit)
  {
    if (rule.goals.empty())
      throw ConfigError("explicit goal list is empty");
    for (std::size_t i = 0; i < count; ++i)
      goals.push_back(rule.goals[i % rule.goals.size()]);
    return goals;
  }

  constexpr std::size_t kAttemptsPerGoal = 10000;
  Rng rng(mix_seed(rule.seed, cell_seed));
  const JointLimits& limits = scenario.limits;
  for (std::size_t i = 0; i < count; ++i)
  {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < kAttemptsPerGoal && !placed; ++attempt)
    {
      Configuration q;
      if (rule.mode == GoalRule::Mode::Random)
      {
        q = sample_uniform(limits, rng);
      }
      else
      {
        const Configuration& center = rule.centers.at(i % rule.centers.size());
        for (std::size_t k = 0; k < kDof; ++k)
          q[k] = center[k] + rng.uniform(-rule.spread, rule.spread);
        q = limits.clamp(q);
      }
      if (is_config_free(scenario.environment, scenario.chain, q))
      {
        goals.emplace_back(q);
        placed = true;
      }
    }
    if (!placed)
      throw InfeasibleEnvironment("could not place goal " + std::to_string(i) +
                                  " in free space");
  }
  return goals;
}

bool ReportRow::failed() const
{
  return std::any_of(modes.begin(), modes.end(), [](const std::string& m) {
    return m == "failed" || m == "infeasible";
  });
}

namespace {

void fill_roadmap_outcome(CellOutcome& out, const PlanResult& plan, const Roadmap& roadmap)
{
  out.start = roadmap.node(plan.start_node);
  for (const GoalResult& g : plan.goals)
  {
    out.row.nodes_expanded += g.stats.nodes_expanded;
    out.row.path_cost += g.path_cost;
    out.row.wall_time += g.stats.wall_time;
    out.row.modes.push_back(to_string(g.mode));
    out.goal_configurations.push_back(g.goal_node ? roadmap.node(*g.goal_node)
                                                  : Configuration{});
    out.node_paths.push_back(g.path);
    out.trajectories.push_back(path_configurations(roadmap, g.path));
  }
}

void run_rrt_cell(CellOutcome& out,
                  const Scenario& scenario,
                  const std::vector<GoalSpec>& goals,
                  const Roadmap* base)
{
  const Environment& env = scenario.environment;
  Configuration current = scenario.start;
  out.start = current;
  for (std::size_t i = 0; i < goals.size(); ++i)
  {
    Configuration goal;
    if (const auto* q = std::get_if<Configuration>(&goals[i]))
      goal = *q;
    else if (base)
      goal = base->node(
          nearest_end_effector_node(*base, scenario.chain, std::get<Pose3>(goals[i]).position));
    else
      throw ConfigError("workspace goals need a roadmap to resolve against");

    out.goal_configurations.push_back(goal);
    out.node_paths.emplace_back();
    RrtParams params = scenario.rrt;
    params.seed = mix_seed(out.spec.seed, i);
    RrtResult r;
    if (is_config_free(env, scenario.chain, goal))
      r = rrt_plan(env, scenario.chain, scenario.limits, current, goal, params);
    out.row.nodes_expanded += r.stats.nodes_expanded;
    out.row.wall_time += r.stats.wall_time;
    if (r.found())
    {
      out.row.path_cost += polyline_length(r.path, env.weights());
      out.row.modes.push_back("rrt");
      current = goal;
    }
    else
    {
      out.row.modes.push_back("failed");
    }
    out.trajectories.push_back(std::move(r.path));
  }
}

} // namespace

CellOutcome run_cell(const Scenario& scenario, const CellSpec& spec, const Roadmap* base)
{
  CellOutcome out;
  out.spec = spec;
  out.row.planner = spec.planner;
  out.row.max_samples = spec.max_samples;
  out.row.n_goals = spec.n_goals;
  out.row.seed = spec.seed;
  out.environment = &scenario.environment;
  out.chain = &scenario.chain;

  const bool needs_roadmap = spec.planner != kPlannerRrt;
  if (needs_roadmap && !base)
  {
    out.row.modes = {"infeasible"};
    return out;
  }

  std::vector<GoalSpec> goals;
  try
  {
    goals = generate_goals(scenario, spec.seed, spec.n_goals);
  }
  catch (const InfeasibleEnvironment&)
  {
    out.row.modes = {"infeasible"};
    return out;
  }

  if (!needs_roadmap)
  {
    run_rrt_cell(out, scenario, goals, base);
    return out;
  }

  // Goal attachment appends nodes, so every cell works on its own copy.
  auto roadmap = std::make_shared<Roadmap>(*base);
  const PlanRequest request{scenario.start, goals, scenario.evidence_schedule};
  PlanResult plan;
  if (spec.planner == kPlannerAhmp)
  {
    HmsStore store(scenario.planner.hms);
    plan = plan_multi_goal(scenario.environment, scenario.chain, *roadmap, store,
                           scenario.bayes_net, request, scenario.planner);
  }
  else
  {
    plan = plan_repeated_astar(scenario.environment, scenario.chain, *roadmap, request);
  }
  fill_roadmap_outcome(out, plan, *roadmap);
  out.roadmap = std::move(roadmap);
  return out;
}

std::vector<ReportRow> run_matrix(const Scenario& scenario, const CellObserver& observer)
{
  std::vector<ReportRow> rows;
  const bool any_roadmap_planner =
      std::any_of(scenario.matrix.planners.begin(), scenario.matrix.planners.end(),
                  [](const std::string& p) { return p != kPlannerRrt; });
  const bool workspace_goals =
      std::any_of(scenario.goals.goals.begin(), scenario.goals.goals.end(),
                  [](const GoalSpec& g) { return std::holds_alternative<Pose3>(g); });

  for (std::size_t max_samples : scenario.matrix.effective_max_samples())
  {
    for (std::uint64_t seed : scenario.matrix.seeds)
    {
      std::optional<Roadmap> roadmap;
      if (any_roadmap_planner || workspace_goals)
      {
        BuildParams params = scenario.roadmap;
        params.max_samples = max_samples;
        params.seed = seed;
        try
        {
          roadmap = build_prm(scenario.environment, scenario.chain, scenario.limits, params);
        }
        catch (const InfeasibleEnvironment&)
        {
          roadmap.reset();
        }
      }
      for (std::size_t n_goals : scenario.matrix.goal_counts)
      {
        for (const std::string& planner : scenario.matrix.planners)
        {
          const CellSpec spec{planner, max_samples, n_goals, seed};
          CellOutcome outcome = run_cell(scenario, spec, roadmap ? &*roadmap : nullptr);
          if (observer)
            observer(outcome);
          rows.push_back(std::move(outcome.row));
        }
      }
    }
  }
  return rows;
}

std::vector<Configuration> resample_by_arc_length(const std::vector<Configuration>& path,
                                                  std::size_t points)
{
  if (path.empty())
    throw ContractViolation("cannot resample an empty trajectory");
  if (points == 0)
    return {};
  std::vector<double> cumulative(path.size(), 0.0);
  for (std::size_t i = 1; i < path.size(); ++i)
    cumulative[i] = cumulative[i - 1] + config_distance(path[i - 1], path[i]);
  const double total = cumulative.back();
  if (points == 1 || total == 0.0)
    return std::vector<Configuration>(points, path.front());

  std::vector<Configuration> out;
  out.reserve(points);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < points; ++k)
  {
    if (k + 1 == points)
    {
      out.push_back(path.back());
      break;
    }
    const double s = total * static_cast<double>(k) / static_cast<double>(points - 1);
    while (seg + 2 < path.size() && cumulative[seg + 1] < s)
      ++seg;
    const double len = cumulative[seg + 1] - cumulative[seg];
    const double t = len > 0.0 ? std::clamp((s - cumulative[seg]) / len, 0.0, 1.0) : 0.0;
    out.push_back(interpolate(path[seg], path[seg + 1], t));
  }
  return out;
}

std::array<JointError, kDof> mean_abs_joint_error(const std::vector<Configuration>& a,
                                                  const std::vector<Configuration>& b)
{
  if (a.empty() || b.empty())
    throw ContractViolation("joint error needs two nonempty trajectories");
  const auto ra = resample_by_arc_length(a, kResamplePoints);
  const auto rb = resample_by_arc_length(b, kResamplePoints);
  std::array<JointError, kDof> out{};
  const double n = static_cast<double>(kResamplePoints);
  for (std::size_t k = 0; k < kDof; ++k)
  {
    double sum = 0.0;
    for (std::size_t i = 0; i < kResamplePoints; ++i)
      sum += std::abs(ra[i][k] - rb[i][k]);
    const double mean = sum / n;
    double var = 0.0;
    for (std::size_t i = 0; i < kResamplePoints; ++i)
    {
      const double d = std::abs(ra[i][k] - rb[i][k]) - mean;
      var += d * d;
    }
    out[k] = {mean, std::sqrt(var / n)};
  }
  return out;
}

namespace {

std::string shortest(double x)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string fixed6(double x)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::string join(const std::vector<std::string>& parts, char sep)
{
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i)
  {
    if (i)
      out += sep;
    out += parts[i];
  }
  return out;
}

std::vector<std::string> split(const std::string& s, char sep)
{
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(s);
  while (std::getline(ss, cur, sep))
    out.push_back(cur);
  if (!s.empty() && s.back() == sep)
    out.emplace_back();
  return out;
}

std::vector<std::string> row_fields(const ReportRow& r)
{
  return {r.planner,
          std::to_string(r.max_samples),
          std::to_string(r.n_goals),
          std::to_string(r.seed),
          std::to_string(r.nodes_expanded),
          shortest(r.path_cost),
          fixed6(r.wall_time),
          join(r.modes, ';')};
}

std::string markdown_table(const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& body)
{
  std::string out;
  const auto line = [](const std::vector<std::string>& cells) {
    std::string s = "|";
    for (const std::string& c : cells)
      s += " " + c + " |";
    return s + "\n";
  };
  out += line(header);
  std::string rule = "|";
  for (std::size_t i = 0; i < header.size(); ++i)
    rule += "---|";
  out += rule + "\n";
  for (const auto& cells : body)
    out += line(cells);
  return out;
}

} // namespace

std::string format_report(const std::vector<ReportRow>& rows, ReportFormat format)
{
  if (format == ReportFormat::Csv)
  {
    std::string out = kCsvHeader + "\n";
    for (const ReportRow& r : rows)
      out += join(row_fields(r), ',') + "\n";
    return out;
  }
  std::vector<std::vector<std::string>> body;
  for (const ReportRow& r : rows)
    body.push_back(row_fields(r));
  return markdown_table(split(kCsvHeader, ','), body);
}

void emit_report(const std::vector<ReportRow>& rows,
                 ReportFormat format,
                 const std::filesystem::path& out)
{
  if (rows.empty())
    throw ContractViolation("report needs at least one row");
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file)
    throw IoError("cannot write report to " + out.string());
  file << format_report(rows, format);
  if (!file)
    throw IoError("failed writing report to " + out.string());
}

std::vector<ReportRow> parse_csv_report(const std::string& text)
{
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw IoError("report: missing or unexpected CSV header");
  std::vector<ReportRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line))
  {
    ++line_no;
    if (line.empty())
      continue;
    const auto f = split(line, ',');
    if (f.size() != 8)
      throw IoError("report line " + std::to_string(line_no) + ": expected 8 fields");
    ReportRow r;
    try
    {
      r.planner = f[0];
      r.max_samples = std::stoull(f[1]);
      r.n_goals = std::stoull(f[2]);
      r.seed = std::stoull(f[3]);
      r.nodes_expanded = std::stoull(f[4]);
      const auto res = std::from_chars(f[5].data(), f[5].data() + f[5].size(), r.path_cost);
      if (res.ec != std::errc{})
        throw std::invalid_argument("path_cost");
      r.wall_time = std::stod(f[6]);
    }
    catch (const std::exception&)
    {
      throw IoError("report line " + std::to_string(line_no) + ": malformed number");
    }
    r.modes = f[7].empty() ? std::vector<std::string>{} : split(f[7], ';');
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ExpansionRatio> expansion_ratios(const std::vector<ReportRow>& rows)
{
  std::map<std::tuple<std::size_t, std::size_t, std::uint64_t>, const ReportRow*> baseline;
  for (const ReportRow& r : rows)
    if (r.planner == kPlannerPrmAstar)
      baseline[{r.max_samples, r.n_goals, r.seed}] = &r;

  std::vector<ExpansionRatio> out;
  for (const ReportRow& r : rows)
  {
    if (r.planner != kPlannerAhmp || r.n_goals < 2)
      continue;
    const auto it = baseline.find({r.max_samples, r.n_goals, r.seed});
    if (it == baseline.end() || it->second->nodes_expanded == 0)
      continue;
    out.push_back({r.max_samples, r.n_goals, r.seed, r.nodes_expanded,
                   it->second->nodes_expanded,
                   static_cast<double>(r.nodes_expanded) /
                       static_cast<double>(it->second->nodes_expanded)});
  }
  return out;
}

std::string format_ratios(const std::vector<ExpansionRatio>& ratios, ReportFormat format)
{
  const std::vector<std::string> header{"max_samples",        "n_goals",
                                        "seed",               "ahmp_nodes_expanded",
                                        "prm_astar_nodes_expanded", "ratio"};
  std::vector<std::vector<std::string>> body;
  for (const ExpansionRatio& r : ratios)
    body.push_back({std::to_string(r.max_samples), std::to_string(r.n_goals),
                    std::to_string(r.seed), std::to_string(r.ahmp_expanded),
                    std::to_string(r.prm_astar_expanded), fixed6(r.ratio)});
  if (format == ReportFormat::Markdown)
    return markdown_table(header, body);
  std::string out = join(header, ',') + "\n";
  for (const auto& cells : body)
    out += join(cells, ',') + "\n";
  return out;
}

std::vector<Configuration> read_trajectory(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open trajectory file " + path.string());
  std::vector<Configuration> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line))
  {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
      continue;
    std::istringstream ss(line);
    Configuration::Values v{};
    for (double& x : v)
      if (!(ss >> x))
        throw IoError(path.string() + ":" + std::to_string(line_no) +
                      ": expected 5 numbers");
    std::string extra;
    if (ss >> extra)
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": more than 5 values");
    out.emplace_back(v);
  }
  return out;
}

void write_trajectory(const std::vector<Configuration>& trajectory,
                      const std::filesystem::path& path)
{
  std::ofstream out(path, std::ios::trunc);
  if (!out)
    throw IoError("cannot write trajectory file " + path.string());
  for (const Configuration& q : trajectory)
  {
    for (std::size_t k = 0; k < kDof; ++k)
      out << (k ? " " : "") << shortest(q[k]);
    out << '\n';
  }
}

} // namespace ahmp
