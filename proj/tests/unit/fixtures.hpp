#pragma once

#include <numbers>

#include "ahmp/model.hpp"
#include "ahmp/rng.hpp"
#include "ahmp/world.hpp"

namespace fixtures {

// Four unit links, all joints about +z, base heave along +z, mounted at the
// origin: a planar arm in the xy plane.
inline ahmp::KinematicChain planar_chain(double link = 1.0)
{
  const Eigen::Vector3d z = Eigen::Vector3d::UnitZ();
  return ahmp::KinematicChain({link, link, link, link}, z, {z, z, z, z},
                              Eigen::Vector3d(0.0, 0.0, 0.0));
}

// Tank large enough that the default chain never touches a wall.
inline ahmp::Environment open_tank()
{
  return ahmp::Environment(
      ahmp::Box{Eigen::Vector3d(-10, -10, -10), Eigen::Vector3d(10, 10, 10)}, {}, 0.05);
}

inline ahmp::Configuration random_config(ahmp::Rng& rng,
                                         const ahmp::JointLimits& limits =
                                             ahmp::JointLimits::default_limits())
{
  return ahmp::sample_uniform(limits, rng);
}

} // namespace fixtures
