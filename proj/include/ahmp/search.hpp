#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "ahmp/roadmap.hpp"

namespace ahmp {

struct SearchStats
{
  std::size_t nodes_expanded = 0;
  std::size_t nodes_generated = 0;
  double wall_time = 0.0;   // seconds, informational only

  SearchStats& operator+=(const SearchStats& other)
  {
    nodes_expanded += other.nodes_expanded;
    nodes_generated += other.nodes_generated;
    wall_time += other.wall_time;
    return *this;
  }
};

struct SearchResult
{
  std::vector<NodeIndex> path;   // empty on failure
  double cost = 0.0;
  SearchStats stats;

  bool found() const { return !path.empty(); }
};

/// Optional per-edge admissibility test applied lazily when an edge is
/// relaxed. Used to search a roadmap against an environment that changed
/// after the roadmap was built.
using EdgeFilter = std::function<bool(NodeIndex, NodeIndex)>;

/// A* with h(n) = config_distance(node n, goal) under the roadmap metric.
///
/// Open-list order is (f, h, index) ascending, so expansion counts are
/// deterministic. A node is expanded at most once; the goal pop counts as an
/// expansion. Throws ContractViolation on an out-of-range index.
SearchResult astar(const Roadmap& roadmap,
                   NodeIndex start,
                   NodeIndex goal,
                   const EdgeFilter& edge_ok = {});

/// Sum of edge weights along path; throws ContractViolation if two
/// consecutive nodes are not adjacent.
double path_length(const Roadmap& roadmap, const std::vector<NodeIndex>& path);

struct RrtParams
{
  std::size_t max_iter = 5000;
  double step_size = 0.3;
  double goal_bias = 0.05;
  double goal_tolerance = 0.1;
  std::uint64_t seed = 0;

  void validate() const;

  bool operator==(const RrtParams&) const = default;
};

struct RrtResult
{
  std::vector<Configuration> path;   // empty on failure
  SearchStats stats;                 // expanded = tree vertices added,
                                     // generated = samples drawn

  bool found() const { return !path.empty(); }
};

/// Single-tree RRT. Each extension is validated with is_segment_free; once a
/// vertex lands within goal_tolerance of the goal and the remaining segment
/// is free, the goal itself is appended so the path ends exactly on it.
/// Running out of iterations yields an empty path, not an error.
/// Throws InCollision if start or goal is not free.
RrtResult rrt_plan(const Environment& env,
                   const KinematicChain& chain,
                   const JointLimits& limits,
                   const Configuration& start,
                   const Configuration& goal,
                   const RrtParams& params);

/// Polyline length under the given metric.
double polyline_length(const std::vector<Configuration>& path,
                       const DistanceWeights& weights = {});

} // namespace ahmp
