#include "ahmp/planner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "ahmp/error.hpp"

namespace ahmp {

void PlannerConfig::validate() const
{
  hms.validate();
  const double w[] = {cost_weights.distance, cost_weights.uncertainty,
                      cost_weights.energy, cost_weights.time};
  bool any_positive = false;
  for (double x : w)
  {
    if (!std::isfinite(x) || x < 0.0)
      throw ContractViolation("cost weights must be finite and nonnegative");
    any_positive = any_positive || x > 0.0;
  }
  if (!any_positive)
    throw ContractViolation("at least one cost weight must be positive");
}

std::string to_string(PlanMode mode)
{
  switch (mode)
  {
    case PlanMode::HmsStitched:
      return "hms_stitched";
    case PlanMode::FullAstar:
      return "full_astar";
    case PlanMode::Failed:
      return "failed";
  }
  return "failed";
}

std::size_t PlanResult::total_nodes_expanded() const
{
  std::size_t sum = 0;
  for (const GoalResult& g : goals)
    sum += g.stats.nodes_expanded;
  return sum;
}

double PlanResult::total_path_cost() const
{
  double sum = 0.0;
  for (const GoalResult& g : goals)
    sum += g.path_cost;
  return sum;
}

NodeIndex resolve_goal(const GoalSpec& goal,
                       Roadmap& roadmap,
                       const KinematicChain& chain,
                       const Environment& env)
{
  if (roadmap.empty())
    throw ContractViolation("cannot resolve a goal on an empty roadmap");

  if (const auto* q = std::get_if<Configuration>(&goal))
  {
    if (!is_config_free(env, chain, *q))
      throw InCollision("goal configuration is in collision");
    if (const auto existing = roadmap.find_exact(*q))
      return *existing;
    return connect_query_node(roadmap, env, chain, *q);
  }

  return nearest_end_effector_node(roadmap, chain, std::get<Pose3>(goal).position);
}

NodeIndex nearest_end_effector_node(const Roadmap& roadmap,
                                    const KinematicChain& chain,
                                    const Eigen::Vector3d& target)
{
  if (roadmap.empty())
    throw ContractViolation("cannot search an empty roadmap");
  if (!target.allFinite())
    throw ContractViolation("goal position must be finite");
  NodeIndex best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  for (NodeIndex i = 0; i < roadmap.size(); ++i)
  {
    const double d2 =
        (forward_kinematics(chain, roadmap.node(i)).back().position - target).squaredNorm();
    if (d2 < best_d2)
    {
      best_d2 = d2;
      best = i;
    }
  }
  return best;
}

std::vector<NodeIndex> stitch(const SearchResult& partial_a,
                              const std::vector<NodeIndex>& highway,
                              const SearchResult& partial_b)
{
  const auto& a = partial_a.path;
  const auto& b = partial_b.path;
  if (a.empty() || highway.empty() || b.empty())
    throw ContractViolation("stitch needs three nonempty segments");
  if (a.back() != highway.front())
    throw ContractViolation("stitch: first segment does not end at the highway entry");
  if (highway.back() != b.front())
    throw ContractViolation("stitch: highway does not end where the last segment starts");

  std::vector<NodeIndex> out(a.begin(), a.end());
  out.insert(out.end(), highway.begin() + 1, highway.end());
  out.insert(out.end(), b.begin() + 1, b.end());
  return out;
}

double composite_cost(const std::vector<NodeIndex>& path,
                      const HmsStore& store,
                      const PlannerConfig& cfg,
                      const Roadmap& roadmap)
{
  const double length = path_length(roadmap, path);

  std::vector<NodeIndex> sorted = path;
  std::sort(sorted.begin(), sorted.end());
  double u_sum = 0.0;
  std::size_t u_count = 0;
  for (const MotionPrimitive& prim : store.primitives())
  {
    const bool shares = std::any_of(prim.path.begin(), prim.path.end(), [&](NodeIndex v) {
      return std::binary_search(sorted.begin(), sorted.end(), v);
    });
    if (shares)
    {
      u_sum += prim.uncertainty;
      ++u_count;
    }
  }
  const double mean_u = u_count ? u_sum / static_cast<double>(u_count) : 0.0;

  const CostWeights& w = cfg.cost_weights;
  return w.distance * length + w.uncertainty * mean_u + w.energy * length +
         w.time * static_cast<double>(path.size());
}

std::vector<Configuration> path_configurations(const Roadmap& roadmap,
                                               const std::vector<NodeIndex>& path)
{
  std::vector<Configuration> out;
  out.reserve(path.size());
  for (NodeIndex v : path)
    out.push_back(roadmap.node(v));
  return out;
}

namespace {

// Memoized edge check against a scene the roadmap was not built in.
class LazyEdgeChecker
{
public:
  LazyEdgeChecker(const Environment& env, const KinematicChain& chain, const Roadmap& roadmap)
    : env_(env), chain_(chain), roadmap_(roadmap)
  {}

  bool operator()(NodeIndex u, NodeIndex v)
  {
    const std::uint64_t key = (static_cast<std::uint64_t>(std::min(u, v)) << 32) |
                              static_cast<std::uint64_t>(std::max(u, v));
    const auto it = memo_.find(key);
    if (it != memo_.end())
      return it->second;
    const bool ok = is_segment_free(env_, chain_, roadmap_.node(u), roadmap_.node(v));
    memo_.emplace(key, ok);
    return ok;
  }

private:
  const Environment& env_;
  const KinematicChain& chain_;
  const Roadmap& roadmap_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

bool highway_free(const std::vector<NodeIndex>& highway,
                  const Roadmap& roadmap,
                  const Environment& env,
                  const KinematicChain& chain)
{
  if (!is_config_free(env, chain, roadmap.node(highway.front())))
    return false;
  for (std::size_t i = 1; i < highway.size(); ++i)
    if (!is_segment_free(env, chain, roadmap.node(highway[i - 1]), roadmap.node(highway[i])))
      return false;
  return true;
}

double elapsed(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Position on the primitive's path closest to `from`; ties take the earlier
// position.
std::size_t entry_position(const MotionPrimitive& prim,
                           const Configuration& from,
                           const Roadmap& roadmap)
{
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < prim.path.size(); ++i)
  {
    const double d = config_distance(roadmap.node(prim.path[i]), from, roadmap.weights());
    if (d < best_d)
    {
      best_d = d;
      best = i;
    }
  }
  return best;
}

// Partial search between highway junctions. Coinciding endpoints need no
// search at all.
SearchResult partial_search(const Roadmap& roadmap,
                            NodeIndex from,
                            NodeIndex to,
                            const EdgeFilter& filter)
{
  if (from == to)
  {
    SearchResult r;
    r.path = {from};
    return r;
  }
  return astar(roadmap, from, to, filter);
}

NodeIndex resolve_start(const StartSpec& start,
                        Roadmap& roadmap,
                        const KinematicChain& chain,
                        const Environment& env)
{
  if (const auto* idx = std::get_if<NodeIndex>(&start))
  {
    if (*idx >= roadmap.size())
      throw ContractViolation("start node out of range");
    if (!is_config_free(env, chain, roadmap.node(*idx)))
      throw InCollision("start node is in collision");
    return *idx;
  }
  return resolve_goal(std::get<Configuration>(start), roadmap, chain, env);
}

} // namespace

PlanResult plan_repeated_astar(const Environment& env,
                               const KinematicChain& chain,
                               Roadmap& roadmap,
                               const PlanRequest& request)
{
  if (request.goals.empty())
    throw ContractViolation("plan request needs at least one goal");
  PlanResult result;
  NodeIndex current = resolve_start(request.start, roadmap, chain, env);
  result.start_node = current;

  const bool scene_changed =
      roadmap.meta().environment_fingerprint != environment_fingerprint(env);
  LazyEdgeChecker checker(env, chain, roadmap);
  EdgeFilter filter;
  if (scene_changed)
    filter = [&checker](NodeIndex u, NodeIndex v) { return checker(u, v); };

  for (const GoalSpec& goal_spec : request.goals)
  {
    const auto t0 = std::chrono::steady_clock::now();
    GoalResult out;
    out.from_node = current;
    try
    {
      out.goal_node = resolve_goal(goal_spec, roadmap, chain, env);
    }
    catch (const InCollision&)
    {
      result.goals.push_back(std::move(out));
      continue;
    }
    SearchResult full = astar(roadmap, current, *out.goal_node, filter);
    out.stats = full.stats;
    if (full.found())
    {
      out.mode = PlanMode::FullAstar;
      out.path_cost = full.cost;
      out.path = std::move(full.path);
      current = *out.goal_node;
    }
    out.stats.wall_time = elapsed(t0);
    result.goals.push_back(std::move(out));
  }
  return result;
}

PlanResult plan_multi_goal(const Environment& env,
                           const KinematicChain& chain,
                           Roadmap& roadmap,
                           HmsStore& store,
                           const BayesNet& bn,
                           const PlanRequest& request,
                           const PlannerConfig& cfg)
{
  cfg.validate();
  if (request.goals.empty())
    throw ContractViolation("plan request needs at least one goal");
  store.set_params(cfg.hms);

  PlanResult result;
  NodeIndex current = resolve_start(request.start, roadmap, chain, env);
  result.start_node = current;

  const bool scene_changed =
      roadmap.meta().environment_fingerprint != environment_fingerprint(env);
  LazyEdgeChecker checker(env, chain, roadmap);
  EdgeFilter filter;
  if (scene_changed)
    filter = [&checker](NodeIndex u, NodeIndex v) { return checker(u, v); };

  for (std::size_t gi = 0; gi < request.goals.size(); ++gi)
  {
    const auto t0 = std::chrono::steady_clock::now();
    GoalResult out;
    out.from_node = current;

    const Evidence evidence =
        request.evidence_schedule.empty()
            ? Evidence{}
            : request.evidence_schedule[gi % request.evidence_schedule.size()];

    try
    {
      out.goal_node = resolve_goal(request.goals[gi], roadmap, chain, env);
    }
    catch (const InCollision&)
    {
      out.mode = PlanMode::Failed;
      result.goals.push_back(std::move(out));
      continue;
    }
    const NodeIndex goal = *out.goal_node;
    const Configuration& goal_q = roadmap.node(goal);

    if (!store.empty())
      update_uncertainty(store, bn, evidence, roadmap, env, chain);

    std::vector<NodeIndex> path;
    out.approach = select_approach_node(store, goal_q, bn, evidence, roadmap);
    if (out.approach)
    {
      const MotionPrimitive& prim = store.get(*out.approach);
      const std::size_t entry = entry_position(prim, roadmap.node(current), roadmap);
      const std::vector<NodeIndex> highway(prim.path.begin() + static_cast<std::ptrdiff_t>(entry),
                                           prim.path.end());
      if (cfg.revalidate_cached && !highway_free(highway, roadmap, env, chain))
      {
        out.revalidation_failed = true;
      }
      else
      {
        const SearchResult a = partial_search(roadmap, current, highway.front(), filter);
        out.stats += a.stats;
        if (a.found())
        {
          const SearchResult b = partial_search(roadmap, prim.terminal, goal, filter);
          out.stats += b.stats;
          if (b.found())
          {
            path = stitch(a, highway, b);
            out.mode = PlanMode::HmsStitched;
            out.cache_hit = true;
          }
        }
      }
    }

    if (path.empty())
    {
      const SearchResult full = astar(roadmap, current, goal, filter);
      out.stats += full.stats;
      if (full.found())
      {
        path = full.path;
        out.mode = PlanMode::FullAstar;
      }
    }

    if (!path.empty())
    {
      out.path_cost = path_length(roadmap, path);
      out.composite_cost = composite_cost(path, store, cfg, roadmap);
      out.path = std::move(path);
      cache_path(store, goal, out.path, roadmap);
      store.primitives().back().time_estimate = elapsed(t0);
      update_uncertainty(store, bn, evidence, roadmap, env, chain);
      current = goal;
    }
    else
    {
      out.mode = PlanMode::Failed;
    }

    out.stats.wall_time = elapsed(t0);
    result.goals.push_back(std::move(out));
  }
  return result;
}

} // namespace ahmp
