#include "ahmp/roadmap.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_set>

#include "ahmp/error.hpp"

namespace ahmp {

void BuildParams::validate() const
{
  if (max_samples < 2)
    throw ContractViolation("max_samples must be at least 2");
  if (k_neighbors < 1)
    throw ContractViolation("k_neighbors must be at least 1");
  if (max_rejection_factor < 1)
    throw ContractViolation("max_rejection_factor must be at least 1");
}

std::optional<double> Roadmap::edge_weight(NodeIndex u, NodeIndex v) const
{
  for (const Edge& e : adjacency_.at(u))
    if (e.to == v)
      return e.weight;
  return std::nullopt;
}

NodeIndex Roadmap::add_node(const Configuration& q)
{
  nodes_.push_back(q);
  adjacency_.emplace_back();
  return nodes_.size() - 1;
}

void Roadmap::add_edge(NodeIndex u, NodeIndex v, double weight)
{
  if (u >= size() || v >= size())
    throw ContractViolation("edge endpoint out of range");
  if (u == v)
    throw ContractViolation("self-loops are not allowed");
  if (!(weight >= 0.0) || !std::isfinite(weight))
    throw ContractViolation("edge weight must be finite and nonnegative");
  if (adjacent(u, v))
    throw ContractViolation("duplicate edge " + std::to_string(u) + "-" +
                            std::to_string(v));
  adjacency_[u].push_back({v, weight});
  adjacency_[v].push_back({u, weight});
  edges_.push_back({u, v, weight});
}

std::vector<NodeIndex> Roadmap::nearest(const Configuration& q,
                                        std::size_t k,
                                        std::optional<NodeIndex> exclude) const
{
  using Entry = std::pair<double, NodeIndex>;
  // Max-heap of the best k seen so far; (distance, index) ordering gives the
  // lower index priority among equal distances.
  std::vector<Entry> heap;
  heap.reserve(k + 1);
  for (NodeIndex i = 0; i < nodes_.size(); ++i)
  {
    if (exclude && *exclude == i)
      continue;
    const Entry e{config_distance(q, nodes_[i], weights_), i};
    if (heap.size() < k)
    {
      heap.push_back(e);
      std::push_heap(heap.begin(), heap.end());
    }
    else if (k > 0 && e < heap.front())
    {
      std::pop_heap(heap.begin(), heap.end());
      heap.back() = e;
      std::push_heap(heap.begin(), heap.end());
    }
  }
  std::sort_heap(heap.begin(), heap.end());
  std::vector<NodeIndex> out;
  out.reserve(heap.size());
  for (const Entry& e : heap)
    out.push_back(e.second);
  return out;
}

std::optional<NodeIndex> Roadmap::find_exact(const Configuration& q) const
{
  for (NodeIndex i = 0; i < nodes_.size(); ++i)
    if (nodes_[i] == q)
      return i;
  return std::nullopt;
}

Roadmap build_prm(const Environment& env,
                  const KinematicChain& chain,
                  const JointLimits& limits,
                  const BuildParams& params)
{
  params.validate();
  Roadmap roadmap(env.weights());
  Rng rng(params.seed);

  const std::size_t budget = params.max_samples * params.max_rejection_factor;
  std::size_t attempts = 0;
  while (roadmap.size() < params.max_samples && attempts < budget)
  {
    ++attempts;
    const Configuration q = sample_uniform(limits, rng);
    if (is_config_free(env, chain, q))
      roadmap.add_node(q);
  }
  if (roadmap.empty())
    throw InfeasibleEnvironment("no collision-free configuration found in " +
                                std::to_string(attempts) + " samples");

  std::unordered_set<std::uint64_t> rejected;
  const auto pair_key = [](NodeIndex a, NodeIndex b) {
    return (static_cast<std::uint64_t>(std::min(a, b)) << 32) |
           static_cast<std::uint64_t>(std::max(a, b));
  };

  const std::size_t n = roadmap.size();
  for (NodeIndex i = 0; i < n; ++i)
  {
    for (NodeIndex j : roadmap.nearest(roadmap.node(i), params.k_neighbors, i))
    {
      if (roadmap.adjacent(i, j) || rejected.contains(pair_key(i, j)))
        continue;
      if (is_segment_free(env, chain, roadmap.node(i), roadmap.node(j)))
        roadmap.add_edge(
            i, j, config_distance(roadmap.node(i), roadmap.node(j), env.weights()));
      else
        rejected.insert(pair_key(i, j));
    }
  }

  roadmap.set_meta({params, roadmap.size(), attempts, environment_fingerprint(env)});
  return roadmap;
}

NodeIndex connect_query_node(Roadmap& roadmap,
                             const Environment& env,
                             const KinematicChain& chain,
                             const Configuration& q)
{
  if (!is_config_free(env, chain, q))
    throw InCollision("query configuration is in collision");
  const std::size_t k = std::max<std::size_t>(1, roadmap.meta().params.k_neighbors);
  const std::vector<NodeIndex> candidates = roadmap.nearest(q, k);
  const NodeIndex idx = roadmap.add_node(q);
  for (NodeIndex j : candidates)
  {
    if (is_segment_free(env, chain, q, roadmap.node(j)))
      roadmap.add_edge(idx, j, config_distance(q, roadmap.node(j), roadmap.weights()));
  }
  return idx;
}

void export_roadmap(const Roadmap& roadmap, std::ostream& out)
{
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  out << "roadmap " << roadmap.size() << ' ' << roadmap.edge_count() << '\n';
  out << "weights";
  for (double w : roadmap.weights().values())
    out << ' ' << w;
  out << '\n';
  for (NodeIndex i = 0; i < roadmap.size(); ++i)
  {
    out << "node " << i;
    for (double v : roadmap.node(i).values())
      out << ' ' << v;
    out << '\n';
  }
  for (const auto& e : roadmap.edges())
    out << "edge " << e.u << ' ' << e.v << ' ' << e.weight << '\n';
  out.flags(flags);
  out.precision(precision);
}

Roadmap import_roadmap(std::istream& in)
{
  std::string line;
  std::size_t line_no = 0;
  const auto fail = [&](const std::string& why) -> IoError {
    return IoError("roadmap line " + std::to_string(line_no) + ": " + why);
  };

  std::size_t expect_nodes = 0, expect_edges = 0;
  if (!std::getline(in, line))
    throw IoError("roadmap: empty input");
  ++line_no;
  {
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag >> expect_nodes >> expect_edges) || tag != "roadmap")
      throw fail("expected 'roadmap <nodes> <edges>'");
  }

  Configuration::Values w{};
  if (!std::getline(in, line))
    throw fail("missing weights line");
  ++line_no;
  {
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    for (double& x : w)
      ss >> x;
    if (!ss || tag != "weights")
      throw fail("expected 'weights' followed by 5 reals");
  }

  Roadmap roadmap{DistanceWeights(w)};
  while (std::getline(in, line))
  {
    ++line_no;
    if (line.empty())
      continue;
    std::istringstream ss(line);
    std::string tag;
    ss >> tag;
    if (tag == "node")
    {
      std::size_t idx = 0;
      Configuration::Values v{};
      ss >> idx;
      for (double& x : v)
        ss >> x;
      if (!ss || idx != roadmap.size())
        throw fail("malformed node record");
      roadmap.add_node(Configuration(v));
    }
    else if (tag == "edge")
    {
      std::size_t u = 0, v = 0;
      double weight = 0.0;
      if (!(ss >> u >> v >> weight))
        throw fail("malformed edge record");
      try
      {
        roadmap.add_edge(u, v, weight);
      }
      catch (const ContractViolation& e)
      {
        throw fail(e.what());
      }
    }
    else
    {
      throw fail("unknown record '" + tag + "'");
    }
  }
  if (roadmap.size() != expect_nodes || roadmap.edge_count() != expect_edges)
    throw IoError("roadmap: header counts do not match records");
  roadmap.set_meta({BuildParams{}, roadmap.size(), 0, 0});
  return roadmap;
}

} // namespace ahmp
