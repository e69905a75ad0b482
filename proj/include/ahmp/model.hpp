#pragma once

#include <array>
#include <cstddef>
#include <span>

#include <Eigen/Core>

#include "ahmp/rng.hpp"

namespace ahmp {

inline constexpr std::size_t kDof = 5;
inline constexpr std::size_t kArmJoints = 4;

/// A point in joint space: index 0 is base heave in meters, indices 1..4 are
/// revolute joint angles in radians.
class Configuration
{
public:
  using Values = std::array<double, kDof>;

  Configuration() : values_{} {}
  explicit Configuration(const Values& values) : values_(values) {}

  /// Throws ContractViolation unless exactly kDof values are given.
  static Configuration from_span(std::span<const double> values);

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  const Values& values() const { return values_; }

  bool operator==(const Configuration&) const = default;

private:
  Values values_;
};

class JointLimits
{
public:
  /// Throws ContractViolation unless lower[k] <= upper[k] for every k.
  /// Zero-width intervals are accepted so a joint can be pinned.
  JointLimits(const Configuration::Values& lower,
              const Configuration::Values& upper);

  static JointLimits default_limits();

  const Configuration::Values& lower() const { return lower_; }
  const Configuration::Values& upper() const { return upper_; }

  bool contains(const Configuration& q) const;
  Configuration clamp(const Configuration& q) const;

  /// Returns q unchanged, or throws ContractViolation naming the first joint
  /// outside its interval.
  Configuration validate(const Configuration& q) const;

  bool operator==(const JointLimits&) const = default;

private:
  Configuration::Values lower_;
  Configuration::Values upper_;
};

/// Positive per-axis weights of the configuration-space metric.
class DistanceWeights
{
public:
  DistanceWeights() { values_.fill(1.0); }
  /// Throws ContractViolation if any weight is not strictly positive.
  explicit DistanceWeights(const Configuration::Values& values);

  double operator[](std::size_t i) const { return values_[i]; }
  const Configuration::Values& values() const { return values_; }

  bool operator==(const DistanceWeights&) const = default;

private:
  Configuration::Values values_;
};

struct Pose3
{
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
};

/// Prismatic base followed by four revolute joints. Each link extends along
/// the local x axis of the frame produced by its joint.
class KinematicChain
{
public:
  using Axis = Eigen::Vector3d;

  /// Axes are normalized on construction. Throws ContractViolation on a
  /// non-positive link length or a zero-length axis.
  KinematicChain(const std::array<double, kArmJoints>& link_lengths,
                 const Axis& base_axis,
                 const std::array<Axis, kArmJoints>& joint_axes,
                 const Eigen::Vector3d& mount_offset);

  /// Reference arm used by the shipped scenarios: heave along +z, a yaw
  /// joint followed by three pitch joints, mounted at the tank centre.
  static KinematicChain default_chain();

  const std::array<double, kArmJoints>& link_lengths() const
  {
    return link_lengths_;
  }
  const Axis& base_axis() const { return base_axis_; }
  const std::array<Axis, kArmJoints>& joint_axes() const { return joint_axes_; }
  const Eigen::Vector3d& mount_offset() const { return mount_offset_; }

  double total_reach() const;

  bool operator==(const KinematicChain& other) const;

private:
  std::array<double, kArmJoints> link_lengths_;
  Axis base_axis_;
  std::array<Axis, kArmJoints> joint_axes_;
  Eigen::Vector3d mount_offset_;
};

/// Frame origins: [0] the arm base after heave, [1..4] the end of each link.
/// The last entry is the end-effector.
using FramePositions = std::array<Pose3, kDof>;

FramePositions forward_kinematics(const KinematicChain& chain,
                                  const Configuration& q);

/// Weighted Euclidean norm sqrt(sum_k (w_k * (a_k - b_k))^2).
double config_distance(const Configuration& a,
                       const Configuration& b,
                       const DistanceWeights& weights = {});

/// (1 - t) * a + t * b componentwise; exact at both endpoints.
/// Throws ContractViolation if t is outside [0, 1].
Configuration interpolate(const Configuration& a,
                          const Configuration& b,
                          double t);

/// Each component uniform in [lower, upper], drawn in joint order.
Configuration sample_uniform(const JointLimits& limits, Rng& rng);

} // namespace ahmp
