#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "ahmp/model.hpp"

namespace ahmp {

struct Sphere
{
  Eigen::Vector3d center;
  double radius;

  bool operator==(const Sphere&) const = default;
};

struct Box
{
  Eigen::Vector3d min;
  Eigen::Vector3d max;

  bool operator==(const Box&) const = default;
};

/// A sphere or an axis-aligned box. Construction through the factories
/// enforces radius > 0 and min < max componentwise.
class Obstacle
{
public:
  static Obstacle sphere(const Eigen::Vector3d& center, double radius);
  static Obstacle box(const Eigen::Vector3d& min, const Eigen::Vector3d& max);

  const std::variant<Sphere, Box>& shape() const { return shape_; }

  bool contains(const Eigen::Vector3d& p) const;

  /// Unsigned distance from an exterior point to the surface; 0 inside.
  double distance(const Eigen::Vector3d& p) const;

  bool operator==(const Obstacle&) const = default;

private:
  explicit Obstacle(std::variant<Sphere, Box> shape) : shape_(std::move(shape)) {}
  std::variant<Sphere, Box> shape_;
};

class Environment
{
public:
  /// Throws ContractViolation on empty bounds or non-positive resolution.
  Environment(Box bounds, std::vector<Obstacle> obstacles, double check_resolution);

  /// 3.5 x 3.0 x 2.5 m tank, no obstacles, resolution 0.05.
  static Environment default_tank();

  const Box& bounds() const { return bounds_; }
  const std::vector<Obstacle>& obstacles() const { return obstacles_; }
  double check_resolution() const { return check_resolution_; }
  const DistanceWeights& weights() const { return weights_; }

  Environment with_obstacles(std::vector<Obstacle> obstacles) const;
  Environment with_weights(const DistanceWeights& weights) const;

  bool operator==(const Environment&) const = default;

private:
  Box bounds_;
  std::vector<Obstacle> obstacles_;
  double check_resolution_;
  // Metric used to turn check_resolution into an interpolation step.
  DistanceWeights weights_;
};

inline constexpr std::size_t kProbeCount = 2 * kDof - 1;

/// Collision probes: the five frame origins followed by the midpoints of the
/// four consecutive frame pairs.
std::array<Eigen::Vector3d, kProbeCount> probe_points(const KinematicChain& chain,
                                                      const Configuration& q);

bool is_config_free(const Environment& env,
                    const KinematicChain& chain,
                    const Configuration& q);

/// Checks interpolate(a, b, k * delta) for k = 0..ceil(1 / delta) (the last
/// sample clamped to t = 1), with delta = check_resolution / distance(a, b).
bool is_segment_free(const Environment& env,
                     const KinematicChain& chain,
                     const Configuration& a,
                     const Configuration& b);

/// Smallest distance from any probe point to an obstacle surface or a tank
/// wall. nullopt when q is in collision.
std::optional<double> min_clearance(const Environment& env,
                                    const KinematicChain& chain,
                                    const Configuration& q);

/// FNV-1a digest of everything that affects collision answers (never 0).
/// Roadmaps record it at build time so planners can tell when the scene
/// changed underneath them.
std::uint64_t environment_fingerprint(const Environment& env);

} // namespace ahmp
