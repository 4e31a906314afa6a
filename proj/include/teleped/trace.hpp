#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "teleped/types.hpp"

namespace teleped {

/// One simulation step of one bilateral pair, as logged.  Platform joints
/// and forces live in each platform's own frame; arm quantities, attractors
/// and the object pose live in the shared world frame, except the reflected
/// force which is logged in the platform frame it is rendered in (directly
/// comparable with the measured tip force).
struct TraceRecord {
  double t = 0;
  char phase = 'a';

  Vec5d q_left = Vec5d::Zero();
  Vec3d tip_force_left = Vec3d::Zero();
  Vec5d q_right = Vec5d::Zero();
  Vec3d tip_force_right = Vec3d::Zero();

  Vec3d arm_x_left = Vec3d::Zero();
  Vec3d arm_v_left = Vec3d::Zero();
  Vec3d arm_fu_left = Vec3d::Zero();
  Vec3d arm_fe_left = Vec3d::Zero();
  Vec3d arm_x_right = Vec3d::Zero();
  Vec3d arm_v_right = Vec3d::Zero();
  Vec3d arm_fu_right = Vec3d::Zero();
  Vec3d arm_fe_right = Vec3d::Zero();

  Vec3d attractor_left = Vec3d::Zero();
  Vec3d reflected_left = Vec3d::Zero();
  Vec3d attractor_right = Vec3d::Zero();
  Vec3d reflected_right = Vec3d::Zero();

  Vec3d object_position = Vec3d::Zero();
};

struct SimTrace {
  std::vector<TraceRecord> records;

  static const std::string& csv_header();

  void write_csv(std::ostream& out) const;
  void write_csv_file(const std::string& path) const;

  static SimTrace read_csv(std::istream& in, const std::string& origin);
  static SimTrace read_csv_file(const std::string& path);
};

}  // namespace teleped
