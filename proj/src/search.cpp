#include "ahmp/search.hpp"

#include <algorithm>
#include <chrono>
#include <string>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include "ahmp/error.hpp"

namespace ahmp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

} // namespace

SearchResult astar(const Roadmap& roadmap,
                   NodeIndex start,
                   NodeIndex goal,
                   const EdgeFilter& edge_ok)
{
  const auto t0 = Clock::now();
  const std::size_t n = roadmap.size();
  if (start >= n || goal >= n)
    throw ContractViolation("astar: node index out of range");

  constexpr double inf = std::numeric_limits<double>::infinity();
  constexpr NodeIndex none = std::numeric_limits<NodeIndex>::max();
  std::vector<double> g(n, inf);
  std::vector<double> h(n, -1.0);
  std::vector<NodeIndex> parent(n, none);
  std::vector<char> closed(n, 0);

  const Configuration& goal_q = roadmap.node(goal);
  const auto heuristic = [&](NodeIndex v) {
    if (h[v] < 0.0)
      h[v] = config_distance(roadmap.node(v), goal_q, roadmap.weights());
    return h[v];
  };

  using Key = std::tuple<double, double, NodeIndex>;   // (f, h, index)
  std::priority_queue<Key, std::vector<Key>, std::greater<>> open;

  SearchResult result;
  g[start] = 0.0;
  open.emplace(heuristic(start), heuristic(start), start);
  result.stats.nodes_generated = 1;

  while (!open.empty())
  {
    const auto [f, hv, u] = open.top();
    open.pop();
    if (closed[u])
      continue;
    closed[u] = 1;
    ++result.stats.nodes_expanded;

    if (u == goal)
    {
      for (NodeIndex v = goal; v != none; v = parent[v])
        result.path.push_back(v);
      std::reverse(result.path.begin(), result.path.end());
      result.cost = g[goal];
      break;
    }

    for (const Edge& e : roadmap.neighbors(u))
    {
      if (closed[e.to])
        continue;
      const double candidate = g[u] + e.weight;
      if (candidate >= g[e.to])
        continue;
      if (edge_ok && !edge_ok(u, e.to))
        continue;
      if (g[e.to] == inf)
        ++result.stats.nodes_generated;
      g[e.to] = candidate;
      parent[e.to] = u;
      const double he = heuristic(e.to);
      open.emplace(candidate + he, he, e.to);
    }
  }

  result.stats.wall_time = seconds_since(t0);
  return result;
}

double path_length(const Roadmap& roadmap, const std::vector<NodeIndex>& path)
{
  double sum = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i)
  {
    const auto w = roadmap.edge_weight(path[i - 1], path[i]);
    if (!w)
      throw ContractViolation("path nodes " + std::to_string(path[i - 1]) +
                              " and " + std::to_string(path[i]) +
                              " are not adjacent");
    sum += *w;
  }
  return sum;
}

void RrtParams::validate() const
{
  if (max_iter < 1)
    throw ContractViolation("rrt max_iter must be positive");
  if (!(step_size > 0.0))
    throw ContractViolation("rrt step_size must be positive");
  if (!(goal_bias >= 0.0 && goal_bias <= 1.0))
    throw ContractViolation("rrt goal_bias must lie in [0, 1]");
  if (!(goal_tolerance > 0.0))
    throw ContractViolation("rrt goal_tolerance must be positive");
}

namespace {

std::vector<Configuration> trace_back(const std::vector<Configuration>& vertices,
                                      const std::vector<std::size_t>& parents,
                                      std::size_t leaf)
{
  std::vector<Configuration> path;
  for (std::size_t v = leaf;; v = parents[v])
  {
    path.push_back(vertices[v]);
    if (v == 0)
      break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

} // namespace

RrtResult rrt_plan(const Environment& env,
                   const KinematicChain& chain,
                   const JointLimits& limits,
                   const Configuration& start,
                   const Configuration& goal,
                   const RrtParams& params)
{
  params.validate();
  const auto t0 = Clock::now();
  if (!is_config_free(env, chain, start))
    throw InCollision("rrt start is in collision");
  if (!is_config_free(env, chain, goal))
    throw InCollision("rrt goal is in collision");

  const DistanceWeights& w = env.weights();
  RrtResult result;
  std::vector<Configuration> vertices{start};
  std::vector<std::size_t> parents{0};

  const auto try_finish = [&](std::size_t leaf) {
    const Configuration& q = vertices[leaf];
    if (config_distance(q, goal, w) > params.goal_tolerance)
      return false;
    if (!is_segment_free(env, chain, q, goal))
      return false;
    result.path = trace_back(vertices, parents, leaf);
    if (!(q == goal))
      result.path.push_back(goal);
    return true;
  };

  Rng rng(params.seed);
  if (!try_finish(0))
  {
    for (std::size_t iter = 0; iter < params.max_iter; ++iter)
    {
      ++result.stats.nodes_generated;
      const bool toward_goal = rng.uniform01() < params.goal_bias;
      const Configuration target = toward_goal ? goal : sample_uniform(limits, rng);

      std::size_t near = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < vertices.size(); ++i)
      {
        const double d = config_distance(vertices[i], target, w);
        if (d < best)
        {
          best = d;
          near = i;
        }
      }
      if (best == 0.0)
        continue;

      const Configuration next =
          best <= params.step_size
              ? target
              : interpolate(vertices[near], target, params.step_size / best);
      if (!is_segment_free(env, chain, vertices[near], next))
        continue;

      vertices.push_back(next);
      parents.push_back(near);
      ++result.stats.nodes_expanded;
      if (try_finish(vertices.size() - 1))
        break;
    }
  }

  result.stats.wall_time = seconds_since(t0);
  return result;
}

double polyline_length(const std::vector<Configuration>& path,
                       const DistanceWeights& weights)
{
  double sum = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i)
    sum += config_distance(path[i - 1], path[i], weights);
  return sum;
}

} // namespace ahmp
