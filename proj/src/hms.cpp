#include "ahmp/hms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <iomanip>
#include <ostream>
#include <string>

#include "ahmp/error.hpp"
#include "ahmp/search.hpp"

namespace ahmp {

void HmsParams::validate() const
{
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw ContractViolation("lambda must be finite and nonnegative");
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw ContractViolation("alpha must be finite and nonnegative");
  if (!(tau >= 0.0))
    throw ContractViolation("tau must be nonnegative");
  if (!(clearance_threshold >= 0.0) || !std::isfinite(clearance_threshold))
    throw ContractViolation("clearance threshold must be finite and nonnegative");
}

HmsStore::HmsStore(const HmsParams& params) : params_(params)
{
  params_.validate();
}

void HmsStore::set_params(const HmsParams& params)
{
  params.validate();
  params_ = params;
}

const MotionPrimitive& HmsStore::get(PrimitiveId id) const
{
  for (const MotionPrimitive& p : primitives_)
    if (p.id == id)
      return p;
  throw ContractViolation("no primitive with id " + std::to_string(id));
}

PrimitiveId HmsStore::append(MotionPrimitive prim)
{
  prim.id = next_id_++;
  primitives_.push_back(std::move(prim));
  return primitives_.back().id;
}

double score(const MotionPrimitive& prim,
             const Configuration& goal,
             const Roadmap& roadmap,
             double lambda)
{
  const double d = config_distance(roadmap.node(prim.terminal), goal, roadmap.weights());
  return std::exp(-lambda * prim.uncertainty) / (1.0 + d);
}

std::string clearance_state(double clearance, double threshold)
{
  return clearance < threshold ? "low" : "high";
}

Evidence evidence_for(const MotionPrimitive& prim,
                      const Evidence& evidence,
                      const BayesNet& bn,
                      double clearance_threshold)
{
  Evidence out = evidence;
  if (prim.min_clearance && bn.has_node("Clearance"))
    out["Clearance"] = clearance_state(*prim.min_clearance, clearance_threshold);
  return out;
}

std::optional<PrimitiveId> select_approach_node(const HmsStore& store,
                                                const Configuration& goal,
                                                const BayesNet& bn,
                                                const Evidence& evidence,
                                                const Roadmap& roadmap)
{
  const HmsParams& params = store.params();
  std::optional<PrimitiveId> best;
  double best_value = -1.0;
  for (const MotionPrimitive& prim : store.primitives())
  {
    const double d =
        config_distance(roadmap.node(prim.terminal), goal, roadmap.weights());
    if (!(d <= params.tau))
      continue;
    const double value =
        score(prim, goal, roadmap, params.lambda) * prim.weight *
        success_probability(bn, evidence_for(prim, evidence, bn, params.clearance_threshold));
    if (!best || value > best_value)
    {
      best = prim.id;
      best_value = value;
    }
  }
  return best;
}

void reweight(HmsStore& store, double new_path_length)
{
  if (store.empty())
    throw ContractViolation("reweight on an empty store");
  const double factor = std::exp(-store.params().alpha * new_path_length);
  double sum = 0.0;
  for (MotionPrimitive& p : store.primitives())
  {
    p.weight *= factor;
    sum += p.weight;
  }
  if (!(sum > 0.0) || !std::isfinite(sum))
  {
    const double uniform = 1.0 / static_cast<double>(store.size());
    for (MotionPrimitive& p : store.primitives())
      p.weight = uniform;
    return;
  }
  for (MotionPrimitive& p : store.primitives())
    p.weight /= sum;
}

PrimitiveId cache_path(HmsStore& store,
                       NodeIndex goal_node,
                       const std::vector<NodeIndex>& path,
                       const Roadmap& roadmap)
{
  if (path.empty())
    throw ContractViolation("cannot cache an empty path");
  if (path.back() != goal_node)
    throw ContractViolation("cached path must end at its goal node");
  MotionPrimitive prim;
  prim.path = path;
  prim.terminal = path.back();
  prim.length = path_length(roadmap, path);
  prim.weight = 1.0;
  const PrimitiveId id = store.append(std::move(prim));
  reweight(store, store.primitives().back().length);
  return id;
}

void update_uncertainty(HmsStore& store,
                        const BayesNet& bn,
                        const Evidence& evidence,
                        const Roadmap& roadmap,
                        const Environment& env,
                        const KinematicChain& chain)
{
  const double threshold = store.params().clearance_threshold;
  for (MotionPrimitive& prim : store.primitives())
  {
    double clearance = std::numeric_limits<double>::infinity();
    for (NodeIndex v : prim.path)
      clearance = std::min(clearance, min_clearance(env, chain, roadmap.node(v)).value_or(0.0));
    prim.min_clearance = clearance;
    prim.uncertainty =
        std::clamp(1.0 - success_probability(bn, evidence_for(prim, evidence, bn, threshold)),
                   0.0, 1.0);
  }
}

void dump_hms(const HmsStore& store, std::ostream& out)
{
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  out << "# id terminal length uncertainty weight\n";
  for (const MotionPrimitive& p : store.primitives())
    out << p.id << ' ' << p.terminal << ' ' << p.length << ' ' << p.uncertainty << ' '
        << p.weight << '\n';
  out.flags(flags);
  out.precision(precision);
}

} // namespace ahmp
