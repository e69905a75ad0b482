#include "ahmp/world.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "ahmp/error.hpp"

namespace ahmp {

Obstacle Obstacle::sphere(const Eigen::Vector3d& center, double radius)
{
  if (!(radius > 0.0) || !center.allFinite())
    throw ContractViolation("sphere obstacle needs a finite center and radius > 0");
  return Obstacle(Sphere{center, radius});
}

Obstacle Obstacle::box(const Eigen::Vector3d& min, const Eigen::Vector3d& max)
{
  if (!min.allFinite() || !max.allFinite() || !(min.array() < max.array()).all())
    throw ContractViolation("box obstacle needs min < max componentwise");
  return Obstacle(Box{min, max});
}

namespace {

double box_exterior_distance(const Box& b, const Eigen::Vector3d& p)
{
  const Eigen::Vector3d d =
      (b.min - p).cwiseMax(p - b.max).cwiseMax(Eigen::Vector3d::Zero());
  return d.norm();
}

bool box_contains(const Box& b, const Eigen::Vector3d& p)
{
  return (p.array() >= b.min.array()).all() && (p.array() <= b.max.array()).all();
}

} // namespace

bool Obstacle::contains(const Eigen::Vector3d& p) const
{
  if (const auto* s = std::get_if<Sphere>(&shape_))
    return (p - s->center).squaredNorm() <= s->radius * s->radius;
  return box_contains(std::get<Box>(shape_), p);
}

double Obstacle::distance(const Eigen::Vector3d& p) const
{
  if (const auto* s = std::get_if<Sphere>(&shape_))
    return std::max(0.0, (p - s->center).norm() - s->radius);
  return box_exterior_distance(std::get<Box>(shape_), p);
}

Environment::Environment(Box bounds,
                         std::vector<Obstacle> obstacles,
                         double check_resolution)
  : bounds_(std::move(bounds)),
    obstacles_(std::move(obstacles)),
    check_resolution_(check_resolution)
{
  if (!bounds_.min.allFinite() || !bounds_.max.allFinite() ||
      !(bounds_.min.array() < bounds_.max.array()).all())
    throw ContractViolation("environment bounds must be a nonempty box");
  if (!(check_resolution > 0.0) || !std::isfinite(check_resolution))
    throw ContractViolation("check_resolution must be positive");
}

Environment Environment::default_tank()
{
  return Environment(Box{Eigen::Vector3d::Zero(), Eigen::Vector3d(3.5, 3.0, 2.5)},
                     {}, 0.05);
}

Environment Environment::with_obstacles(std::vector<Obstacle> obstacles) const
{
  Environment out = *this;
  out.obstacles_ = std::move(obstacles);
  return out;
}

Environment Environment::with_weights(const DistanceWeights& weights) const
{
  Environment out = *this;
  out.weights_ = weights;
  return out;
}

std::array<Eigen::Vector3d, kProbeCount> probe_points(const KinematicChain& chain,
                                                      const Configuration& q)
{
  const FramePositions frames = forward_kinematics(chain, q);
  std::array<Eigen::Vector3d, kProbeCount> probes;
  for (std::size_t i = 0; i < kDof; ++i)
    probes[i] = frames[i].position;
  for (std::size_t i = 0; i + 1 < kDof; ++i)
    probes[kDof + i] = 0.5 * (frames[i].position + frames[i + 1].position);
  return probes;
}

bool is_config_free(const Environment& env,
                    const KinematicChain& chain,
                    const Configuration& q)
{
  for (const Eigen::Vector3d& p : probe_points(chain, q))
  {
    if (!box_contains(env.bounds(), p))
      return false;
    for (const Obstacle& o : env.obstacles())
      if (o.contains(p))
        return false;
  }
  return true;
}

bool is_segment_free(const Environment& env,
                     const KinematicChain& chain,
                     const Configuration& a,
                     const Configuration& b)
{
  // Sample from the lexicographically smaller endpoint so the probe set,
  // and therefore the answer, does not depend on argument order.
  const bool swap = b.values() < a.values();
  const Configuration& from = swap ? b : a;
  const Configuration& to = swap ? a : b;

  const double dist = config_distance(from, to, env.weights());
  if (dist == 0.0)
    return is_config_free(env, chain, from);

  const double delta = env.check_resolution() / dist;
  const auto steps = static_cast<std::size_t>(std::ceil(1.0 / delta));
  // Endpoints first: most rejections happen there.
  if (!is_config_free(env, chain, from) || !is_config_free(env, chain, to))
    return false;
  for (std::size_t k = 1; k < steps; ++k)
  {
    const double t = std::min(1.0, static_cast<double>(k) * delta);
    if (!is_config_free(env, chain, interpolate(from, to, t)))
      return false;
  }
  return true;
}

std::optional<double> min_clearance(const Environment& env,
                                    const KinematicChain& chain,
                                    const Configuration& q)
{
  if (!is_config_free(env, chain, q))
    return std::nullopt;
  double best = std::numeric_limits<double>::infinity();
  const Box& bounds = env.bounds();
  for (const Eigen::Vector3d& p : probe_points(chain, q))
  {
    best = std::min(best, (p - bounds.min).minCoeff());
    best = std::min(best, (bounds.max - p).minCoeff());
    for (const Obstacle& o : env.obstacles())
      best = std::min(best, o.distance(p));
  }
  return best;
}

} // namespace ahmp

namespace ahmp {

namespace {

class Fnv1a
{
public:
  void add(double x)
  {
    if (x == 0.0)
      x = 0.0;   // fold -0.0
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &x, sizeof(double));
    for (unsigned char b : bytes)
    {
      hash_ ^= b;
      hash_ *= 0x100000001b3ULL;
    }
  }
  void add(const Eigen::Vector3d& v)
  {
    add(v.x());
    add(v.y());
    add(v.z());
  }
  std::uint64_t value() const { return hash_ == 0 ? 1 : hash_; }

private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

} // namespace

std::uint64_t environment_fingerprint(const Environment& env)
{
  Fnv1a h;
  h.add(env.bounds().min);
  h.add(env.bounds().max);
  h.add(env.check_resolution());
  for (double w : env.weights().values())
    h.add(w);
  for (const Obstacle& o : env.obstacles())
  {
    if (const auto* s = std::get_if<Sphere>(&o.shape()))
    {
      h.add(1.0);
      h.add(s->center);
      h.add(s->radius);
    }
    else
    {
      const Box& b = std::get<Box>(o.shape());
      h.add(2.0);
      h.add(b.min);
      h.add(b.max);
    }
  }
  return h.value();
}

} // namespace ahmp
