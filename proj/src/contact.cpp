#include "teleped/contact.hpp"

#include <cmath>
#include <stdexcept>

namespace teleped {

void GraspObject::validate() const {
  if (!center.allFinite() || !half_extents.allFinite()) {
    throw std::domain_error("grasp object: geometry must be finite");
  }
  if ((half_extents.array() <= 0).any()) {
    throw std::domain_error("grasp object: half extents must be positive");
  }
  if (!(wall_stiffness > 0)) {
    throw std::domain_error("grasp object: wall stiffness must be positive");
  }
  if (wall_damping < 0) {
    throw std::domain_error("grasp object: wall damping must be non-negative");
  }
  if (!(mass > 0)) {
    throw std::domain_error("grasp object: mass must be positive");
  }
}

ContactResult contact_probe(const GraspObject& object, const Vec3d& point, const Vec3d& velocity) {
  if (!point.allFinite() || !velocity.allFinite()) {
    throw std::domain_error("contact_probe: inputs must be finite");
  }
  ContactResult result;
  const Vec3d offset = point - object.center;

  int face = 0;
  double depth = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    const double margin = object.half_extents[i] - std::abs(offset[i]);
    if (margin <= 0) {
      return result;  // outside, or exactly on a wall: no contact
    }
    if (margin < depth) {
      depth = margin;
      face = i;
    }
  }

  result.active = true;
  result.penetration = depth;
  result.normal = Vec3d::Zero();
  result.normal[face] = offset[face] >= 0 ? 1.0 : -1.0;

  const double approach_rate = -velocity.dot(result.normal);
  result.force = (object.wall_stiffness * depth +
                  object.wall_damping * std::max(0.0, approach_rate)) *
                 result.normal;
  return result;
}

Vec3d contact_force(const GraspObject& object, const Vec3d& point, const Vec3d& velocity) {
  return contact_probe(object, point, velocity).force;
}

}  // namespace teleped
