#pragma once

#include "teleped/types.hpp"

namespace teleped {

/// Axis-aligned box with compliant walls.  `center` is the current pose (the
/// box translates rigidly while manipulated); the remaining fields are
/// material/geometry constants.
struct GraspObject {
  Vec3d center = Vec3d::Zero();
  Vec3d half_extents{0.05, 0.05, 0.05};
  double wall_stiffness = 2000;  ///< N/m
  double wall_damping = 50;      ///< N*s/m, resists approach only
  double mass = 0.01;            ///< kg

  void validate() const;
};

struct ContactResult {
  bool active = false;
  Vec3d normal = Vec3d::Zero();  ///< outward unit normal of the engaged face
  double penetration = 0;        ///< m, depth behind that face
  Vec3d force = Vec3d::Zero();   ///< on the penetrating point
};

/// Penalty contact against the box wall nearest to escape.  A point strictly
/// inside the box engages the face it has penetrated least; the force is the
/// spring term plus a one-sided damper that only ever resists further
/// penetration (it never sticks to a receding point).  `velocity` is the
/// point's velocity relative to the box.
ContactResult contact_probe(const GraspObject& object, const Vec3d& point, const Vec3d& velocity);

/// Force-only view of contact_probe; zero outside the box.
Vec3d contact_force(const GraspObject& object, const Vec3d& point, const Vec3d& velocity);

}  // namespace teleped
