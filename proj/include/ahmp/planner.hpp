#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ahmp/bayesnet.hpp"
#include "ahmp/hms.hpp"
#include "ahmp/roadmap.hpp"
#include "ahmp/search.hpp"
#include "ahmp/world.hpp"

namespace ahmp {

struct CostWeights
{
  double distance = 1.0;
  double uncertainty = 0.0;
  double energy = 0.0;
  double time = 0.0;

  bool operator==(const CostWeights&) const = default;
};

struct PlannerConfig
{
  HmsParams hms;
  CostWeights cost_weights;
  bool revalidate_cached = true;

  /// Throws ContractViolation on non-finite or negative cost weights, all
  /// cost weights zero, or invalid HMS parameters.
  void validate() const;

  bool operator==(const PlannerConfig&) const = default;
};

using StartSpec = std::variant<Configuration, NodeIndex>;
using GoalSpec = std::variant<Configuration, Pose3>;

struct PlanRequest
{
  StartSpec start;
  std::vector<GoalSpec> goals;
  // Goal i observes evidence_schedule[i % size]; empty means no evidence.
  std::vector<Evidence> evidence_schedule;
};

enum class PlanMode
{
  HmsStitched,
  FullAstar,
  Failed,
};

std::string to_string(PlanMode mode);

struct GoalResult
{
  std::optional<NodeIndex> goal_node;   // nullopt if the goal could not be attached
  NodeIndex from_node = 0;              // currentNode when this goal was planned
  std::vector<NodeIndex> path;
  double path_cost = 0.0;               // sum of edge weights
  double composite_cost = 0.0;
  PlanMode mode = PlanMode::Failed;
  SearchStats stats;
  bool cache_hit = false;
  std::optional<PrimitiveId> approach;  // selected primitive, if any
  bool revalidation_failed = false;
};

struct PlanResult
{
  NodeIndex start_node = 0;
  std::vector<GoalResult> goals;

  std::size_t total_nodes_expanded() const;
  double total_path_cost() const;
};

/// Configuration goals reuse an identical existing node or are attached with
/// connect_query_node; Pose3 goals map to the node whose end-effector is
/// nearest the target point (ties: lower index). Throws ContractViolation on
/// an empty roadmap and InCollision for a colliding configuration goal.
NodeIndex resolve_goal(const GoalSpec& goal,
                       Roadmap& roadmap,
                       const KinematicChain& chain,
                       const Environment& env);

/// Node whose end-effector position is nearest `target` (ties: lower
/// index). Throws ContractViolation on an empty roadmap.
NodeIndex nearest_end_effector_node(const Roadmap& roadmap,
                                    const KinematicChain& chain,
                                    const Eigen::Vector3d& target);

/// partial_a ++ highway ++ partial_b with each junction node kept once.
/// Throws ContractViolation if the junctions do not match.
std::vector<NodeIndex> stitch(const SearchResult& partial_a,
                              const std::vector<NodeIndex>& highway,
                              const SearchResult& partial_b);

/// w_d * length + w_u * (mean uncertainty of primitives sharing a node with
/// the path, 0 if none) + w_e * length + w_t * node count. Energy and time
/// use length and node count as stand-ins.
double composite_cost(const std::vector<NodeIndex>& path,
                      const HmsStore& store,
                      const PlannerConfig& cfg,
                      const Roadmap& roadmap);

/// Plans to every goal in order, chaining from each reached goal.
///
/// Per goal: refresh primitive uncertainties under the scheduled evidence,
/// select an approach primitive, and if one is found search
/// currentNode -> highway entry and terminal -> goal, where the entry is the
/// primitive-path node nearest to currentNode. If selection, revalidation or
/// either partial search fails, run a full A* instead. Successful paths are
/// cached and the store is reweighted; failed goals leave currentNode as is.
///
/// cfg.hms replaces the store's parameters before the first goal.
///
/// When env differs from the environment the roadmap was built in, every
/// search lazily checks edges against env.
PlanResult plan_multi_goal(const Environment& env,
                           const KinematicChain& chain,
                           Roadmap& roadmap,
                           HmsStore& store,
                           const BayesNet& bn,
                           const PlanRequest& request,
                           const PlannerConfig& cfg);

/// Baseline: an independent full A* per goal with the same currentNode
/// chaining and goal attachment as plan_multi_goal, and no cache.
PlanResult plan_repeated_astar(const Environment& env,
                               const KinematicChain& chain,
                               Roadmap& roadmap,
                               const PlanRequest& request);

/// Configurations along a node path.
std::vector<Configuration> path_configurations(const Roadmap& roadmap,
                                               const std::vector<NodeIndex>& path);

} // namespace ahmp
