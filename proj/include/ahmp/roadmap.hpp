#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ahmp/model.hpp"
#include "ahmp/world.hpp"

namespace ahmp {

using NodeIndex = std::size_t;

struct BuildParams
{
  std::size_t max_samples = 1000;
  std::size_t k_neighbors = 10;
  std::uint64_t seed = 0;
  std::size_t max_rejection_factor = 50;

  /// Throws ContractViolation unless max_samples >= 2, k_neighbors >= 1 and
  /// max_rejection_factor >= 1.
  void validate() const;

  bool operator==(const BuildParams&) const = default;
};

struct BuildMeta
{
  BuildParams params;
  std::size_t achieved_samples = 0;
  std::size_t sampling_attempts = 0;
  std::uint64_t environment_fingerprint = 0;   // 0: unknown (hand-built or imported)
};

struct Edge
{
  NodeIndex to;
  double weight;

  bool operator==(const Edge&) const = default;
};

/// Undirected weighted graph over configurations. Adjacency lists are kept
/// in insertion order and are symmetric.
class Roadmap
{
public:
  Roadmap() = default;
  explicit Roadmap(DistanceWeights weights) : weights_(weights) {}

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  const Configuration& node(NodeIndex i) const { return nodes_.at(i); }
  const std::vector<Configuration>& nodes() const { return nodes_; }
  const std::vector<Edge>& neighbors(NodeIndex i) const { return adjacency_.at(i); }

  std::optional<double> edge_weight(NodeIndex u, NodeIndex v) const;
  bool adjacent(NodeIndex u, NodeIndex v) const
  {
    return edge_weight(u, v).has_value();
  }
  std::size_t edge_count() const { return edges_.size(); }

  bool isolated(NodeIndex i) const { return adjacency_.at(i).empty(); }

  const DistanceWeights& weights() const { return weights_; }
  const BuildMeta& meta() const { return meta_; }
  void set_meta(const BuildMeta& meta) { meta_ = meta; }

  NodeIndex add_node(const Configuration& q);

  /// Adds (u, v, weight) and (v, u, weight). Throws ContractViolation on a
  /// self-loop, a duplicate edge, a bad index or a negative weight.
  void add_edge(NodeIndex u, NodeIndex v, double weight);

  /// Indices of the k nodes nearest to q, ordered by (distance, index).
  /// Exact linear scan.
  std::vector<NodeIndex> nearest(const Configuration& q,
                                 std::size_t k,
                                 std::optional<NodeIndex> exclude = std::nullopt) const;

  /// First node whose configuration equals q exactly.
  std::optional<NodeIndex> find_exact(const Configuration& q) const;

  struct EdgeRecord
  {
    NodeIndex u;
    NodeIndex v;
    double weight;

    bool operator==(const EdgeRecord&) const = default;
  };

  /// Every undirected edge once, in insertion order.
  const std::vector<EdgeRecord>& edges() const { return edges_; }

  bool operator==(const Roadmap& other) const
  {
    return weights_ == other.weights_ && nodes_ == other.nodes_ &&
           adjacency_ == other.adjacency_;
  }

private:
  DistanceWeights weights_;
  std::vector<Configuration> nodes_;
  std::vector<std::vector<Edge>> adjacency_;
  std::vector<EdgeRecord> edges_;
  BuildMeta meta_;
};

/// Samples up to max_samples free configurations in seed order, then links
/// every node to its k nearest neighbours (ties by lower index) whenever the
/// straight segment is free. Edge weights are config_distance under the
/// environment's metric weights.
///
/// Throws InfeasibleEnvironment if the rejection budget
/// (max_samples * max_rejection_factor draws) yields no free sample.
Roadmap build_prm(const Environment& env,
                  const KinematicChain& chain,
                  const JointLimits& limits,
                  const BuildParams& params);

/// Appends q and links it to those of its k nearest nodes reachable by a
/// free segment. The node is kept even when no link succeeds (it is then
/// isolated). Throws InCollision if q itself is not free.
NodeIndex connect_query_node(Roadmap& roadmap,
                             const Environment& env,
                             const KinematicChain& chain,
                             const Configuration& q);

/// Flat text format, one record per line:
///   roadmap <node_count> <edge_count>
///   weights w0 w1 w2 w3 w4
///   node <index> q0 q1 q2 q3 q4
///   edge <u> <v> <weight>          (each undirected edge once, insertion order)
/// Reals are written with 17 significant digits so import is exact.
void export_roadmap(const Roadmap& roadmap, std::ostream& out);
Roadmap import_roadmap(std::istream& in);

} // namespace ahmp
