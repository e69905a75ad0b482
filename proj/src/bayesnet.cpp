#include "ahmp/bayesnet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "ahmp/error.hpp"

namespace ahmp {

namespace {

std::size_t state_index(const NodeSpec& node, const std::string& state)
{
  const auto it = std::find(node.states.begin(), node.states.end(), state);
  if (it == node.states.end())
    throw ContractViolation("node '" + node.name + "' has no state '" + state + "'");
  return static_cast<std::size_t>(it - node.states.begin());
}

} // namespace

BayesNet::BayesNet(std::vector<NodeSpec> nodes) : nodes_(std::move(nodes))
{
  using Kind = Violation::Kind;
  auto& v = violations_;

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
  {
    if (!index.emplace(nodes_[i].name, i).second)
      v.push_back({Kind::DuplicateName, "duplicate node name '" + nodes_[i].name + "'"});
    if (nodes_[i].states.size() < 2)
      v.push_back({Kind::TooFewStates, "node '" + nodes_[i].name + "' needs at least 2 states"});
  }

  compiled_.cardinality.resize(nodes_.size());
  compiled_.parents.resize(nodes_.size());
  bool parents_resolved = true;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
  {
    compiled_.cardinality[i] = nodes_[i].states.size();
    for (const std::string& p : nodes_[i].parents)
    {
      const auto it = index.find(p);
      if (it == index.end())
      {
        v.push_back({Kind::UnknownParent,
                     "node '" + nodes_[i].name + "' names unknown parent '" + p + "'"});
        parents_resolved = false;
      }
      else
      {
        compiled_.parents[i].push_back(it->second);
      }
    }
  }

  // Kahn's algorithm; anything left unvisited sits on a cycle.
  if (parents_resolved)
  {
    std::vector<std::size_t> indegree(nodes_.size(), 0);
    std::vector<std::vector<std::size_t>> children(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      for (std::size_t p : compiled_.parents[i])
      {
        ++indegree[i];
        children[p].push_back(i);
      }
    std::vector<std::size_t> ready;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (indegree[i] == 0)
        ready.push_back(i);
    std::size_t visited = 0;
    while (!ready.empty())
    {
      const std::size_t u = ready.back();
      ready.pop_back();
      ++visited;
      for (std::size_t c : children[u])
        if (--indegree[c] == 0)
          ready.push_back(c);
    }
    if (visited != nodes_.size())
    {
      std::string members;
      for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (indegree[i] > 0)
          members += (members.empty() ? "" : ", ") + nodes_[i].name;
      v.push_back({Kind::Cycle, "cycle through: " + members});
    }

    for (std::size_t i = 0; i < nodes_.size(); ++i)
    {
      const NodeSpec& node = nodes_[i];
      std::size_t rows = 1;
      for (std::size_t p : compiled_.parents[i])
        rows *= std::max<std::size_t>(1, compiled_.cardinality[p]);
      if (node.cpt.size() != rows)
      {
        v.push_back({Kind::RowCount, "node '" + node.name + "' has " +
                                         std::to_string(node.cpt.size()) +
                                         " CPT rows, expected " + std::to_string(rows)});
        continue;
      }
      for (std::size_t r = 0; r < rows; ++r)
      {
        const auto& row = node.cpt[r];
        const std::string where = "node '" + node.name + "' row " + std::to_string(r);
        if (row.size() != node.states.size())
        {
          v.push_back({Kind::RowWidth, where + " has " + std::to_string(row.size()) +
                                           " entries, expected " +
                                           std::to_string(node.states.size())});
          continue;
        }
        if (std::any_of(row.begin(), row.end(),
                        [](double p) { return !(p >= 0.0) || !std::isfinite(p); }))
          v.push_back({Kind::NegativeProbability, where + " has a negative or non-finite entry"});
        const double sum = std::accumulate(row.begin(), row.end(), 0.0);
        if (!(std::abs(sum - 1.0) <= kCptTolerance))
          v.push_back({Kind::RowNormalization,
                       where + " sums to " + std::to_string(sum)});
      }
    }
  }

  for (std::size_t c : compiled_.cardinality)
  {
    joint_states_ *= std::max<std::size_t>(1, c);
    if (joint_states_ > kMaxJointStates)
    {
      v.push_back({Violation::Kind::TooManyStates,
                   "joint state space exceeds " + std::to_string(kMaxJointStates)});
      break;
    }
  }
}

BayesNet BayesNet::default_net()
{
  const std::vector<std::string> low_high{"low", "high"};
  // Rows over (Disturbance, SensorNoise, Clearance), first parent most
  // significant: lll, llh, lhl, lhh, hll, hlh, hhl, hhh.
  return BayesNet({
      {"Disturbance", low_high, {}, {{0.7, 0.3}}},
      {"SensorNoise", low_high, {}, {{0.8, 0.2}}},
      {"Clearance", low_high, {}, {{0.4, 0.6}}},
      {kPathSuccessNode,
       {"true", "false"},
       {"Disturbance", "SensorNoise", "Clearance"},
       {{0.80, 0.20},
        {0.95, 0.05},
        {0.65, 0.35},
        {0.85, 0.15},
        {0.50, 0.50},
        {0.75, 0.25},
        {0.30, 0.70},
        {0.60, 0.40}}},
  });
}

std::size_t BayesNet::index_of(const std::string& name) const
{
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (nodes_[i].name == name)
      return i;
  throw ContractViolation("unknown node '" + name + "'");
}

bool BayesNet::has_node(const std::string& name) const
{
  return std::any_of(nodes_.begin(), nodes_.end(),
                     [&](const NodeSpec& n) { return n.name == name; });
}

const BayesNet::Compiled& BayesNet::compiled() const
{
  if (!valid())
    throw ConfigError("Bayesian network is invalid: " + violations_.front().message);
  return compiled_;
}

std::vector<Violation> validate(const BayesNet& net)
{
  return net.violations();
}

namespace {

// Joint probability of a full assignment given as state indices.
double joint_of(const BayesNet& net,
                const BayesNet::Compiled& c,
                const std::vector<std::size_t>& states)
{
  double p = 1.0;
  for (std::size_t i = 0; i < states.size(); ++i)
  {
    std::size_t row = 0;
    for (std::size_t parent : c.parents[i])
      row = row * c.cardinality[parent] + states[parent];
    p *= net.nodes()[i].cpt[row][states[i]];
  }
  return p;
}

} // namespace

double joint_probability(const BayesNet& net, const Assignment& full_assignment)
{
  const auto& c = net.compiled();
  std::vector<std::size_t> states(net.nodes().size());
  for (std::size_t i = 0; i < states.size(); ++i)
  {
    const NodeSpec& node = net.nodes()[i];
    const auto it = full_assignment.find(node.name);
    if (it == full_assignment.end())
      throw ContractViolation("assignment is missing node '" + node.name + "'");
    states[i] = state_index(node, it->second);
  }
  if (full_assignment.size() != states.size())
    throw ContractViolation("assignment names nodes that are not in the net");
  return joint_of(net, c, states);
}

std::vector<double> posterior(const BayesNet& net,
                              const std::string& query,
                              const Evidence& evidence)
{
  const auto& c = net.compiled();
  const std::size_t q = net.index_of(query);
  if (evidence.contains(query))
    throw ContractViolation("query node '" + query + "' is also observed");

  const std::size_t n = net.nodes().size();
  std::vector<int> fixed(n, -1);
  for (const auto& [name, state] : evidence)
  {
    const std::size_t i = net.index_of(name);
    fixed[i] = static_cast<int>(state_index(net.nodes()[i], state));
  }

  // Odometer over every free variable; observed ones stay pinned.
  std::vector<std::size_t> states(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (fixed[i] >= 0)
      states[i] = static_cast<std::size_t>(fixed[i]);

  std::vector<std::size_t> free_vars;
  for (std::size_t i = 0; i < n; ++i)
    if (fixed[i] < 0)
      free_vars.push_back(i);

  std::vector<double> dist(c.cardinality[q], 0.0);
  bool done = false;
  while (!done)
  {
    dist[states[q]] += joint_of(net, c, states);
    done = true;
    for (std::size_t k = free_vars.size(); k > 0; --k)
    {
      const std::size_t i = free_vars[k - 1];
      if (++states[i] < c.cardinality[i])
      {
        done = false;
        break;
      }
      states[i] = 0;
    }
  }

  const double total = std::accumulate(dist.begin(), dist.end(), 0.0);
  if (!(total > 0.0))
    throw ImpossibleEvidence("evidence has zero probability");
  for (double& p : dist)
    p /= total;
  return dist;
}

double success_probability(const BayesNet& net, const Evidence& evidence)
{
  if (!net.has_node(kPathSuccessNode))
    throw ConfigError("network has no '" + kPathSuccessNode + "' node");
  const NodeSpec& node = net.nodes()[net.index_of(kPathSuccessNode)];
  const auto it = std::find(node.states.begin(), node.states.end(), "true");
  if (it == node.states.end())
    throw ConfigError("'" + kPathSuccessNode + "' has no 'true' state");
  return posterior(net, kPathSuccessNode, evidence)[it - node.states.begin()];
}

} // namespace ahmp
