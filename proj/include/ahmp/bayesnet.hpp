#pragma once

#include <map>
#include <string>
#include <vector>

namespace ahmp {

/// One discrete variable. CPT rows enumerate parent-state combinations in
/// mixed radix with the first parent most significant; each row is a
/// distribution over `states`.
struct NodeSpec
{
  std::string name;
  std::vector<std::string> states;
  std::vector<std::string> parents;
  std::vector<std::vector<double>> cpt;

  bool operator==(const NodeSpec&) const = default;
};

using Evidence = std::map<std::string, std::string>;
using Assignment = std::map<std::string, std::string>;

struct Violation
{
  enum class Kind
  {
    DuplicateName,
    TooFewStates,
    UnknownParent,
    Cycle,
    RowCount,
    RowWidth,
    RowNormalization,
    NegativeProbability,
    TooManyStates,
  };

  Kind kind;
  std::string message;
};

inline constexpr std::size_t kMaxJointStates = std::size_t{1} << 16;
inline constexpr double kCptTolerance = 1e-9;
inline const std::string kPathSuccessNode = "PathSuccess";

/// Immutable discrete Bayesian network. Construction never throws on
/// structural problems; they are reported by validate(), and every
/// inference call on an invalid net throws ConfigError.
class BayesNet
{
public:
  BayesNet() : BayesNet(std::vector<NodeSpec>{}) {}
  explicit BayesNet(std::vector<NodeSpec> nodes);

  /// Disturbance, SensorNoise and Clearance (roots, states {low, high})
  /// feeding PathSuccess (states {true, false}).
  static BayesNet default_net();

  const std::vector<NodeSpec>& nodes() const { return nodes_; }
  const std::vector<Violation>& violations() const { return violations_; }
  bool valid() const { return violations_.empty(); }

  /// Index of the node with this name; throws ContractViolation if absent.
  std::size_t index_of(const std::string& name) const;
  bool has_node(const std::string& name) const;

  /// Product of the state counts of all nodes.
  std::size_t joint_state_count() const { return joint_states_; }

  bool operator==(const BayesNet& other) const { return nodes_ == other.nodes_; }

  // Compiled form shared by the inference routines.
  struct Compiled
  {
    std::vector<std::size_t> cardinality;
    std::vector<std::vector<std::size_t>> parents;   // parent node indices
  };
  const Compiled& compiled() const;

private:
  std::vector<NodeSpec> nodes_;
  std::vector<Violation> violations_;
  Compiled compiled_;
  std::size_t joint_states_ = 1;
};

/// Empty when the net is well formed: acyclic, parents resolve, every CPT
/// has one row per parent combination and each row sums to 1 within 1e-9.
std::vector<Violation> validate(const BayesNet& net);

/// Product over nodes of P(X_i = x_i | Pa(X_i)). Throws ContractViolation if
/// the assignment misses a node or names an unknown state.
double joint_probability(const BayesNet& net, const Assignment& full_assignment);

/// Exact posterior by enumeration over the hidden variables, in the query
/// node's state order. Throws ContractViolation if the query is part of the
/// evidence or evidence is malformed, ImpossibleEvidence if it has zero
/// probability.
std::vector<double> posterior(const BayesNet& net,
                              const std::string& query,
                              const Evidence& evidence);

/// P(PathSuccess = true | evidence). Throws ConfigError if the net has no
/// PathSuccess node with a "true" state.
double success_probability(const BayesNet& net, const Evidence& evidence);

} // namespace ahmp
