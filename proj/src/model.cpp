#include "ahmp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Geometry>

#include "ahmp/error.hpp"

namespace ahmp {

Configuration Configuration::from_span(std::span<const double> values)
{
  if (values.size() != kDof)
    throw ContractViolation(
        "configuration needs " + std::to_string(kDof) + " values, got " +
        std::to_string(values.size()));
  Values v;
  std::copy(values.begin(), values.end(), v.begin());
  return Configuration(v);
}

JointLimits::JointLimits(const Configuration::Values& lower,
                         const Configuration::Values& upper)
  : lower_(lower), upper_(upper)
{
  for (std::size_t k = 0; k < kDof; ++k)
  {
    if (!std::isfinite(lower[k]) || !std::isfinite(upper[k]) ||
        lower[k] > upper[k])
      throw ContractViolation("joint limits invalid at index " +
                              std::to_string(k));
  }
}

JointLimits JointLimits::default_limits()
{
  constexpr double pi = std::numbers::pi;
  return JointLimits({-0.5, -pi, -1.5, -2.5, -2.0},
                     {0.5, pi, 1.5, 2.5, 2.0});
}

bool JointLimits::contains(const Configuration& q) const
{
  for (std::size_t k = 0; k < kDof; ++k)
    if (q[k] < lower_[k] || q[k] > upper_[k])
      return false;
  return true;
}

Configuration JointLimits::clamp(const Configuration& q) const
{
  Configuration out = q;
  for (std::size_t k = 0; k < kDof; ++k)
    out[k] = std::clamp(q[k], lower_[k], upper_[k]);
  return out;
}

Configuration JointLimits::validate(const Configuration& q) const
{
  for (std::size_t k = 0; k < kDof; ++k)
  {
    if (!(q[k] >= lower_[k] && q[k] <= upper_[k]))
      throw ContractViolation("joint " + std::to_string(k) + " value " +
                              std::to_string(q[k]) + " outside limits");
  }
  return q;
}

DistanceWeights::DistanceWeights(const Configuration::Values& values)
  : values_(values)
{
  for (std::size_t k = 0; k < kDof; ++k)
    if (!(values[k] > 0.0) || !std::isfinite(values[k]))
      throw ContractViolation("distance weight " + std::to_string(k) +
                              " must be positive");
}

namespace {

Eigen::Vector3d normalized_axis(const Eigen::Vector3d& axis, const char* what)
{
  const double n = axis.norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw ContractViolation(std::string(what) + " must be a nonzero vector");
  return axis / n;
}

} // namespace

KinematicChain::KinematicChain(
    const std::array<double, kArmJoints>& link_lengths,
    const Axis& base_axis,
    const std::array<Axis, kArmJoints>& joint_axes,
    const Eigen::Vector3d& mount_offset)
  : link_lengths_(link_lengths),
    base_axis_(normalized_axis(base_axis, "base axis")),
    mount_offset_(mount_offset)
{
  for (std::size_t i = 0; i < kArmJoints; ++i)
  {
    if (!(link_lengths[i] > 0.0) || !std::isfinite(link_lengths[i]))
      throw ContractViolation("link length " + std::to_string(i) +
                              " must be positive");
    joint_axes_[i] = normalized_axis(joint_axes[i], "joint axis");
  }
  if (!mount_offset.allFinite())
    throw ContractViolation("mount offset must be finite");
}

KinematicChain KinematicChain::default_chain()
{
  const Axis z = Axis::UnitZ();
  const Axis y = Axis::UnitY();
  return KinematicChain({0.5, 0.45, 0.35, 0.2}, z, {z, y, y, y},
                        Eigen::Vector3d(1.75, 1.5, 1.25));
}

double KinematicChain::total_reach() const
{
  double sum = 0.0;
  for (double l : link_lengths_)
    sum += l;
  return sum;
}

bool KinematicChain::operator==(const KinematicChain& other) const
{
  if (link_lengths_ != other.link_lengths_ || base_axis_ != other.base_axis_ ||
      mount_offset_ != other.mount_offset_)
    return false;
  for (std::size_t i = 0; i < kArmJoints; ++i)
    if (joint_axes_[i] != other.joint_axes_[i])
      return false;
  return true;
}

FramePositions forward_kinematics(const KinematicChain& chain,
                                  const Configuration& q)
{
  FramePositions frames;
  Eigen::Vector3d p = chain.mount_offset() + q[0] * chain.base_axis();
  Eigen::Matrix3d r = Eigen::Matrix3d::Identity();
  frames[0].position = p;
  for (std::size_t i = 0; i < kArmJoints; ++i)
  {
    r = r * Eigen::AngleAxisd(q[i + 1], chain.joint_axes()[i]).toRotationMatrix();
    p += r.col(0) * chain.link_lengths()[i];
    frames[i + 1].position = p;
  }
  return frames;
}

double config_distance(const Configuration& a,
                       const Configuration& b,
                       const DistanceWeights& weights)
{
  double sum = 0.0;
  for (std::size_t k = 0; k < kDof; ++k)
  {
    const double d = weights[k] * (a[k] - b[k]);
    sum += d * d;
  }
  return std::sqrt(sum);
}

Configuration interpolate(const Configuration& a,
                          const Configuration& b,
                          double t)
{
  if (!(t >= 0.0 && t <= 1.0))
    throw ContractViolation("interpolation parameter outside [0, 1]");
  Configuration out;
  for (std::size_t k = 0; k < kDof; ++k)
    out[k] = (1.0 - t) * a[k] + t * b[k];
  return out;
}

Configuration sample_uniform(const JointLimits& limits, Rng& rng)
{
  Configuration q;
  for (std::size_t k = 0; k < kDof; ++k)
    q[k] = rng.uniform(limits.lower()[k], limits.upper()[k]);
  return q;
}

} // namespace ahmp
