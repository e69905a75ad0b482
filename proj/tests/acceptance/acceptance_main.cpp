// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ahmp/bench.hpp"
#include "ahmp/error.hpp"
#include "bn_gen.hpp"
#include "oracles/oracles.hpp"

using namespace ahmp;

namespace {

const std::filesystem::path kDefault = std::filesystem::path(AHMP_SCENARIO_DIR) / "default.json";

struct Verdict
{
  bool pass = true;
  std::string detail;
};

Verdict fail(std::string why) { return {false, std::move(why)}; }

std::string fmt(const char* f, double x)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

// Roadmap for one seed of the shipped scenario at the given size.
Roadmap scenario_roadmap(const Scenario& s, std::size_t samples, std::uint64_t seed)
{
  BuildParams p = s.roadmap;
  p.max_samples = samples;
  p.seed = seed;
  return build_prm(s.environment, s.chain, s.limits, p);
}

// ---------------------------------------------------------------------------

Verdict reuse_advantage(const Scenario& s)
{
  double ratio_sum = 0.0;
  std::ostringstream detail;
  for (std::uint64_t seed : s.matrix.seeds)
  {
    const Roadmap base = scenario_roadmap(s, 10000, seed);
    const CellOutcome ahmp = run_cell(s, {kPlannerAhmp, 10000, 10, seed}, &base);
    const CellOutcome astar = run_cell(s, {kPlannerPrmAstar, 10000, 10, seed}, &base);
    if (ahmp.row.failed() || astar.row.failed())
      return fail("seed " + std::to_string(seed) + " has a failed goal");
    const double ratio = static_cast<double>(ahmp.row.nodes_expanded) /
                         static_cast<double>(astar.row.nodes_expanded);
    detail << "seed " << seed << ": " << ahmp.row.nodes_expanded << "/"
           << astar.row.nodes_expanded << " ";
    if (!(ahmp.row.nodes_expanded < astar.row.nodes_expanded))
      return fail(detail.str() + "ahmp not below full A*");
    ratio_sum += ratio;
  }
  const double mean = ratio_sum / static_cast<double>(s.matrix.seeds.size());
  detail << "mean ratio " << fmt("%.3f", mean) << " (bound 0.8)";
  return {mean <= 0.8, detail.str()};
}

Verdict single_goal_parity(const Scenario& s)
{
  std::ostringstream detail;
  for (std::uint64_t seed : s.matrix.seeds)
  {
    const Roadmap base = scenario_roadmap(s, 10000, seed);
    const CellOutcome ahmp = run_cell(s, {kPlannerAhmp, 10000, 1, seed}, &base);
    const CellOutcome astar = run_cell(s, {kPlannerPrmAstar, 10000, 1, seed}, &base);
    if (ahmp.row.failed() || astar.row.failed())
      return fail("seed " + std::to_string(seed) + " failed");
    if (ahmp.row.path_cost != astar.row.path_cost)
      return fail("seed " + std::to_string(seed) + " cost differs");
    if (ahmp.row.nodes_expanded > astar.row.nodes_expanded)
      return fail("seed " + std::to_string(seed) + " expansion overhead");
    detail << "seed " << seed << ": cost " << fmt("%.6f", ahmp.row.path_cost) << " ";
  }
  detail << "equal on all seeds";
  return {true, detail.str()};
}

Verdict astar_optimality()
{
  for (std::uint64_t seed = 0; seed < 100; ++seed)
  {
    Rng rng(mix_seed(seed, 3));
    const std::size_t n = 2 + rng.below(49);
    Roadmap g;
    for (std::size_t i = 0; i < n; ++i)
      g.add_node(sample_uniform(JointLimits::default_limits(), rng));
    auto link = [&](NodeIndex u, NodeIndex v) {
      if (u != v && !g.adjacent(u, v))
        g.add_edge(u, v, config_distance(g.node(u), g.node(v)) * rng.uniform(1.0, 3.0));
    };
    for (std::size_t i = 1; i < n; ++i)
      link(i, rng.below(i));
    for (std::size_t e = 0, extra = rng.below(2 * n); e < extra; ++e)
      link(rng.below(n), rng.below(n));
    const NodeIndex s = rng.below(n), t = rng.below(n);
    const SearchResult r = astar(g, s, t);
    const double want = oracle::dijkstra(g, s, t);
    if (!r.found() || r.cost != want)
      return fail("graph " + std::to_string(seed) + ": astar " + fmt("%.17g", r.cost) +
                  " vs dijkstra " + fmt("%.17g", want));
  }
  return {true, "100 graphs, costs identical"};
}

Verdict bn_enumeration()
{
  double worst = 0.0;
  for (std::uint64_t net_seed = 0; net_seed < 50; ++net_seed)
  {
    Rng rng(mix_seed(net_seed, 4));
    const BayesNet net = fixtures::random_net(rng, 1 + rng.below(5));
    if (!net.valid())
      return fail("generated net invalid");
    const auto& nodes = net.nodes();
    for (int q = 0; q < 20; ++q)
    {
      const std::size_t qi = rng.below(nodes.size());
      Evidence ev;
      for (std::size_t i = 0; i < nodes.size(); ++i)
        if (i != qi && rng.uniform01() < 0.5)
          ev[nodes[i].name] = nodes[i].states[rng.below(2)];
      const auto got = posterior(net, nodes[qi].name, ev);
      const auto want = oracle::brute_posterior(net, nodes[qi].name, ev);
      for (std::size_t k = 0; k < got.size(); ++k)
        worst = std::max(worst, std::abs(got[k] - want[k]));
    }
  }
  return {worst <= 1e-9, "1000 queries, max abs error " + fmt("%.3g", worst)};
}

Verdict hms_algebra()
{
  Roadmap g;
  for (int i = 0; i < 12; ++i)
    g.add_node(Configuration({0.1 * i, 0.2 * (i % 3), 0, 0, 0}));
  for (int i = 1; i < 12; ++i)
    g.add_edge(i - 1, i, config_distance(g.node(i - 1), g.node(i)));
  const BayesNet bn = BayesNet::default_net();
  Rng rng(5150);

  // Weight normalization over random cache/reweight sequences.
  double worst_sum = 0.0;
  for (int seq = 0; seq < 1000; ++seq)
  {
    HmsParams params;
    params.alpha = rng.uniform(0.0, 5.0);
    HmsStore store(params);
    const int ops = 1 + static_cast<int>(rng.below(15));
    for (int op = 0; op < ops; ++op)
    {
      if (store.empty() || rng.uniform01() < 0.6)
      {
        const NodeIndex a = rng.below(12), b = rng.below(12);
        std::vector<NodeIndex> path;
        for (NodeIndex i = a;; i = b > a ? i + 1 : i - 1)
        {
          path.push_back(i);
          if (i == b)
            break;
        }
        cache_path(store, b, path, g);
      }
      else
      {
        reweight(store, rng.uniform(0.0, 50.0));
      }
      double sum = 0.0;
      for (const auto& p : store.primitives())
        sum += p.weight;
      worst_sum = std::max(worst_sum, std::abs(sum - 1.0));
    }
  }
  if (worst_sum > 1e-9)
    return fail("weight sum off by " + fmt("%.3g", worst_sum));

  // Score monotonicity sweeps.
  for (int i = 0; i < 2000; ++i)
  {
    MotionPrimitive p;
    p.terminal = rng.below(12);
    p.path = {p.terminal};
    const double lambda = rng.uniform(0.0, 5.0);
    const Configuration goal = g.node(rng.below(12));
    double prev = std::numeric_limits<double>::infinity();
    for (double u = 0.0; u <= 1.0; u += 0.05)
    {
      p.uncertainty = u;
      const double sc = score(p, goal, g, lambda);
      if (sc > prev)
        return fail("score increased with U");
      prev = sc;
    }
    p.uncertainty = rng.uniform01();
    std::vector<std::pair<double, NodeIndex>> by_distance;
    for (NodeIndex t = 0; t < 12; ++t)
      by_distance.push_back({oracle::norm3({g.node(t)[0] - goal[0], g.node(t)[1] - goal[1], 0.0}), t});
    std::sort(by_distance.begin(), by_distance.end());
    prev = std::numeric_limits<double>::infinity();
    for (const auto& [d, t] : by_distance)
    {
      p.terminal = t;
      const double sc = score(p, goal, g, lambda);
      if (sc > prev + 1e-15)
        return fail("score increased with d");
      prev = sc;
    }
  }

  // Argmax invariance under uniform weight scaling, and the tau filter
  // against an exhaustive scan.
  for (int trial = 0; trial < 1000; ++trial)
  {
    HmsParams params;
    params.tau = rng.uniform(0.0, 1.5);
    params.lambda = rng.uniform(0.0, 3.0);
    HmsStore store(params);
    const std::size_t n = rng.below(6);
    for (std::size_t i = 0; i < n; ++i)
    {
      MotionPrimitive p;
      p.terminal = rng.below(12);
      p.path = {p.terminal};
      p.uncertainty = rng.uniform01();
      if (rng.uniform01() < 0.7)
        p.min_clearance = rng.uniform(0.0, 0.3);
      store.append(p);
    }
    for (auto& p : store.primitives())
      p.weight = rng.uniform(0.01, 1.0);
    const Configuration goal = g.node(rng.below(12));
    const Evidence ev{{"Disturbance", rng.uniform01() < 0.5 ? "low" : "high"}};

    std::optional<PrimitiveId> best;
    double best_value = -1.0;
    for (const auto& p : store.primitives())
    {
      const double d = oracle::norm3({g.node(p.terminal)[0] - goal[0],
                                      g.node(p.terminal)[1] - goal[1], 0.0});
      if (d > params.tau)
        continue;
      Evidence e = ev;
      if (p.min_clearance)
        e["Clearance"] = *p.min_clearance < params.clearance_threshold ? "low" : "high";
      const double value = std::exp(-params.lambda * p.uncertainty) / (1.0 + d) * p.weight *
                           oracle::brute_posterior(bn, kPathSuccessNode, e)[0];
      if (value > best_value)
      {
        best_value = value;
        best = p.id;
      }
    }
    const auto chosen = select_approach_node(store, goal, bn, ev, g);
    if (chosen.has_value() != best.has_value())
      return fail("tau filter disagrees with exhaustive scan");
    if (chosen && *chosen != *best)
    {
      // Different ids are fine only for exact value ties.
      const auto& c = store.get(*chosen);
      Evidence e = ev;
      if (c.min_clearance)
        e["Clearance"] = *c.min_clearance < params.clearance_threshold ? "low" : "high";
      const double dc = config_distance(g.node(c.terminal), goal);
      const double value = std::exp(-params.lambda * c.uncertainty) / (1.0 + dc) * c.weight *
                           oracle::brute_posterior(bn, kPathSuccessNode, e)[0];
      if (std::abs(value - best_value) > 1e-12 * best_value)
        return fail("argmax disagrees with exhaustive scan");
    }
    const double k = rng.uniform(0.01, 100.0);
    for (auto& p : store.primitives())
      p.weight *= k;
    if (select_approach_node(store, goal, bn, ev, g) != chosen)
      return fail("argmax changed under weight scaling");
  }
  return {true, "1000 sequences max |sum-1| " + fmt("%.2g", worst_sum) +
                    "; monotonicity, scaling and tau filter hold"};
}

// Full default matrix: every returned path audited; CSV kept for the
// determinism check and trajectories kept for the joint-error comparison.
struct MatrixRun
{
  std::string csv;
  std::size_t paths = 0;
  std::size_t violations = 0;
  std::size_t failed_goals = 0;
  std::string first_violation;
  // (seed, planner) -> per-goal trajectories for 10-goal, 10000-sample cells
  std::map<std::pair<std::uint64_t, std::string>, std::vector<std::vector<Configuration>>> traj;
};

MatrixRun run_default_matrix(const Scenario& s, bool audit)
{
  MatrixRun out;
  const auto rows = run_matrix(s, [&](const CellOutcome& c) {
    if (!audit)
      return;
    Configuration from = c.start;
    for (std::size_t i = 0; i < c.trajectories.size(); ++i)
    {
      if (c.row.modes[i] == "failed")
      {
        ++out.failed_goals;
        continue;
      }
      ++out.paths;
      oracle::PathCheck check = oracle::check_trajectory(*c.environment, *c.chain,
                                                         c.trajectories[i], from,
                                                         c.goal_configurations[i]);
      if (check.ok && c.roadmap)
      {
        const auto& path = c.node_paths[i];
        check = oracle::check_node_path(*c.roadmap, *c.environment, *c.chain, path,
                                        path.front(), path.back());
        if (check.ok && !(c.roadmap->node(path.front()) == from))
          check = {false, "path does not start at the current configuration"};
      }
      if (!check.ok)
      {
        if (out.violations++ == 0)
          out.first_violation = c.spec.planner + " seed " + std::to_string(c.spec.seed) +
                                " goal " + std::to_string(i) + ": " + check.why;
      }
      from = c.goal_configurations[i];
    }
    if (c.spec.max_samples == 10000 && c.spec.n_goals == 10)
      out.traj[{c.spec.seed, c.spec.planner}] = c.trajectories;
  });
  out.csv = format_report(rows, ReportFormat::Csv);
  return out;
}

Verdict path_validity(const MatrixRun& run)
{
  std::string detail = std::to_string(run.paths) + " paths audited, " +
                       std::to_string(run.violations) + " violations, " +
                       std::to_string(run.failed_goals) + " failed goals";
  if (run.violations)
    detail += "; first: " + run.first_violation;
  return {run.violations == 0 && run.paths > 0, detail};
}

double mean_error(const std::vector<Configuration>& a, const std::vector<Configuration>& b)
{
  const auto err = mean_abs_joint_error(a, b);
  double sum = 0.0;
  for (const JointError& e : err)
    sum += e.mean;
  return sum / static_cast<double>(err.size());
}

Verdict table_ordering(const Scenario& s, const MatrixRun& run)
{
  int wins = 0;
  std::ostringstream detail;
  for (std::uint64_t seed : s.matrix.seeds)
  {
    const auto& prm = run.traj.at({seed, kPlannerPrmAstar});
    const auto& hms = run.traj.at({seed, kPlannerAhmp});
    const auto& rrt = run.traj.at({seed, kPlannerRrt});
    double e_hms = 0.0, e_rrt = 0.0;
    int goals = 0;
    for (std::size_t i = 0; i < prm.size(); ++i)
    {
      if (prm[i].empty() || hms[i].empty() || rrt[i].empty())
        continue;
      e_hms += mean_error(hms[i], prm[i]);
      e_rrt += mean_error(rrt[i], prm[i]);
      ++goals;
    }
    if (goals == 0)
      continue;
    e_hms /= goals;
    e_rrt /= goals;
    detail << "seed " << seed << ": " << fmt("%.4f", e_hms) << " vs " << fmt("%.4f", e_rrt)
           << " ";
    wins += e_hms < e_rrt ? 1 : 0;
  }
  detail << "(" << wins << "/5 scenarios)";
  return {wins >= 4, detail.str()};
}

std::string drop_wall_time(const std::string& csv)
{
  std::istringstream in(csv);
  std::ostringstream out;
  for (std::string line; std::getline(in, line);)
  {
    std::vector<std::string> fields;
    std::stringstream ls(line);
    for (std::string f; std::getline(ls, f, ',');)
      fields.push_back(f);
    for (std::size_t i = 0; i < fields.size(); ++i)
      if (i != 6)
        out << fields[i] << (i + 1 < fields.size() ? "," : "");
    out << '\n';
  }
  return out.str();
}

Verdict determinism(const Scenario& s, const MatrixRun& first)
{
  const MatrixRun second = run_default_matrix(s, false);
  const bool same = drop_wall_time(first.csv) == drop_wall_time(second.csv);
  return {same, same ? "two full-matrix CSVs identical excluding wall_time"
                     : "CSV outputs differ"};
}

Verdict fallback_robustness(const Scenario& s)
{
  int runs = 0;
  std::ostringstream detail;
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
  {
    const Roadmap base = scenario_roadmap(s, 2000, seed);
    const auto goals = generate_goals(s, seed, 1);
    Roadmap roadmap = base;
    HmsStore store(s.planner.hms);
    PlannerConfig cfg = s.planner;
    cfg.revalidate_cached = true;
    const PlanResult first = plan_multi_goal(s.environment, s.chain, roadmap, store, s.bayes_net,
                                             {s.start, goals, s.evidence_schedule}, cfg);
    const GoalResult& g1 = first.goals[0];
    if (g1.mode == PlanMode::Failed || g1.path.size() < 3)
    {
      detail << "seed " << seed << " skipped; ";
      continue;
    }
    // Drop a sphere on the end-effector of an interior highway node, keeping
    // the start and goal free.
    std::optional<Environment> edited;
    for (std::size_t k = 1; k + 1 < g1.path.size() && !edited; ++k)
    {
      const NodeIndex mid = g1.path[(g1.path.size() / 2 + k - 1) % (g1.path.size() - 2) + 1];
      const Eigen::Vector3d tip = forward_kinematics(s.chain, roadmap.node(mid)).back().position;
      auto obstacles = s.environment.obstacles();
      obstacles.push_back(Obstacle::sphere(tip, 0.08));
      Environment env = s.environment.with_obstacles(obstacles);
      if (is_config_free(env, s.chain, roadmap.node(first.start_node)) &&
          is_config_free(env, s.chain, roadmap.node(*g1.goal_node)))
        edited = env;
    }
    if (!edited)
      return fail("seed " + std::to_string(seed) + ": could not place a blocking obstacle");

    const PlanResult second =
        plan_multi_goal(*edited, s.chain, roadmap, store, s.bayes_net,
                        {first.start_node, goals, s.evidence_schedule}, cfg);
    const GoalResult& g2 = second.goals[0];
    if (g2.mode != PlanMode::FullAstar)
      return fail("seed " + std::to_string(seed) + ": mode " + to_string(g2.mode));
    const auto check = oracle::check_node_path(roadmap, *edited, s.chain, g2.path,
                                               first.start_node, *g2.goal_node);
    if (!check.ok)
      return fail("seed " + std::to_string(seed) + ": " + check.why);
    ++runs;
  }
  detail << runs << "/20 seeds fell back to full A* with collision-free paths";
  return {runs == 20, detail.str()};
}

} // namespace

int main()
{
  Scenario scenario;
  try
  {
    scenario = load_scenario(kDefault);
  }
  catch (const std::exception& e)
  {
    std::printf("FAIL setup: %s\n", e.what());
    return 1;
  }

  bool all = true;
  auto report = [&](int id, const char* name, const std::function<Verdict()>& check) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try
    {
      v = check();
    }
    catch (const std::exception& e)
    {
      v = fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s criterion %d %s: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", id, name,
                v.detail.c_str(), secs);
    std::fflush(stdout);
    all = all && v.pass;
  };

  report(1, "multi-goal reuse advantage", [&] { return reuse_advantage(scenario); });
  report(2, "single-goal parity", [&] { return single_goal_parity(scenario); });
  report(3, "A* optimality", [] { return astar_optimality(); });
  report(4, "BN enumeration", [] { return bn_enumeration(); });
  report(5, "HMS algebra", [] { return hms_algebra(); });

  MatrixRun matrix;
  report(6, "path validity", [&] {
    matrix = run_default_matrix(scenario, true);
    return path_validity(matrix);
  });
  report(7, "joint-error ordering", [&] { return table_ordering(scenario, matrix); });
  report(8, "determinism", [&] { return determinism(scenario, matrix); });
  report(9, "fallback robustness", [&] { return fallback_robustness(scenario); });

  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all ? 0 : 1;
}
