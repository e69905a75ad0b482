#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "ahmp/bayesnet.hpp"
#include "ahmp/roadmap.hpp"
#include "ahmp/world.hpp"

namespace ahmp {

using PrimitiveId = std::size_t;

/// A cached roadmap path ("highway") ending at a previously reached goal.
struct MotionPrimitive
{
  PrimitiveId id = 0;
  std::vector<NodeIndex> path;
  NodeIndex terminal = 0;
  double length = 0.0;
  double uncertainty = 0.0;   // in [0, 1]
  double weight = 1.0;        // reuse weight, in (0, 1] once normalized
  double time_estimate = 0.0; // seconds, informational
  // Minimum clearance over the path's nodes from the last uncertainty
  // update; 0 if any node was in collision, nullopt before the first update.
  std::optional<double> min_clearance;
};

struct HmsParams
{
  double lambda = 1.0;               // confidence
  double alpha = 0.1;                // decay rate
  double tau = 1.0;                  // max terminal-to-goal distance
  double clearance_threshold = 0.15; // meters; below is "low"

  void validate() const;

  bool operator==(const HmsParams&) const = default;
};

class HmsStore
{
public:
  HmsStore() = default;
  explicit HmsStore(const HmsParams& params);

  const HmsParams& params() const { return params_; }
  /// Replaces the parameters; existing primitives are kept as they are.
  void set_params(const HmsParams& params);
  const std::vector<MotionPrimitive>& primitives() const { return primitives_; }
  std::vector<MotionPrimitive>& primitives() { return primitives_; }
  bool empty() const { return primitives_.empty(); }
  std::size_t size() const { return primitives_.size(); }

  const MotionPrimitive& get(PrimitiveId id) const;

  /// Appends with weight 1.0 and uncertainty 0; the caller normalizes.
  PrimitiveId append(MotionPrimitive prim);

private:
  HmsParams params_;
  std::vector<MotionPrimitive> primitives_;
  PrimitiveId next_id_ = 0;
};

/// exp(-lambda * U) / (1 + d), d = config distance from the primitive's
/// terminal configuration to the goal.
double score(const MotionPrimitive& prim,
             const Configuration& goal,
             const Roadmap& roadmap,
             double lambda);

/// "low" or "high" relative to the threshold.
std::string clearance_state(double clearance, double threshold);

/// Evidence plus the primitive's Clearance bucket (when the net has a
/// Clearance node and the primitive's clearance is known).
Evidence evidence_for(const MotionPrimitive& prim,
                      const Evidence& evidence,
                      const BayesNet& bn,
                      double clearance_threshold);

/// Among primitives whose terminal lies within tau of the goal, the id
/// maximizing score * weight * P(success | evidence, clearance of prim).
/// Ties go to the lowest id; nullopt when nothing passes the tau filter.
std::optional<PrimitiveId> select_approach_node(const HmsStore& store,
                                                const Configuration& goal,
                                                const BayesNet& bn,
                                                const Evidence& evidence,
                                                const Roadmap& roadmap);

/// Multiplies every weight by exp(-alpha * new_path_length) and renormalizes.
/// If every weight underflows to zero the store is reset to uniform.
/// Throws ContractViolation on an empty store.
void reweight(HmsStore& store, double new_path_length);

/// Appends the path as a new primitive with weight 1.0 and reweights.
/// Uncertainty starts at 0 until update_uncertainty runs. Throws
/// ContractViolation on an empty path, a path not ending at goal_node, or
/// non-adjacent consecutive nodes.
PrimitiveId cache_path(HmsStore& store,
                       NodeIndex goal_node,
                       const std::vector<NodeIndex>& path,
                       const Roadmap& roadmap);

/// U_i <- 1 - P(success | evidence, Clearance = bucket(min node clearance)).
void update_uncertainty(HmsStore& store,
                        const BayesNet& bn,
                        const Evidence& evidence,
                        const Roadmap& roadmap,
                        const Environment& env,
                        const KinematicChain& chain);

/// One line per primitive: id terminal length uncertainty weight.
void dump_hms(const HmsStore& store, std::ostream& out);

} // namespace ahmp
