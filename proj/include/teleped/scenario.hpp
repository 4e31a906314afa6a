#pragma once

#include <array>
#include <string>

#include "teleped/arm.hpp"
#include "teleped/contact.hpp"
#include "teleped/platform.hpp"
#include "teleped/trajectory.hpp"

namespace teleped {

enum class PhaseGroup { Free, Contact };

/// The six scripted phases a..f.  a/b/f are free motion (idle, reach,
/// retreat), c/d/e are in-contact (grasp and lift, manipulation, external
/// disturbances).
struct PhaseTable {
  struct Phase {
    char label = 'a';
    double start = 0;
    double end = 0;
  };

  std::array<Phase, 6> phases{};

  /// Index of the phase containing t; times at a boundary belong to the
  /// later phase, and the final end time is inclusive.
  int index_at(double t) const;
  char label_at(double t) const { return phases[static_cast<std::size_t>(index_at(t))].label; }

  static PhaseGroup group_of(char label);

  void validate(double duration) const;
};

/// Per-side wiring of the telemanipulation chain: where the remote arm
/// sits, how master coordinates map across (mirroring for the left side),
/// and the scripted foot input driving that side.
struct SideConfig {
  bool mirror = false;            ///< negate master x (left/right symmetry)
  Vec3d arm_base = Vec3d::Zero(); ///< world position of the arm's workspace origin
  Mat3d arm_orientation_target = Mat3d::Identity();
  JointTrajectory foot_trajectory;
};

struct DisturbanceConfig {
  int count = 0;
  Vec3d force = Vec3d::Zero();  ///< N, applied to the object
  double duration = 0.05;       ///< s, per pulse
  double offset = 1.0;          ///< s after the disturbance phase starts
  double interval = 2.0;        ///< s between pulse starts
  char phase = 'e';
};

enum class PlatformMode { Ideal, Hardware };

struct ScenarioConfig {
  std::string name = "scenario";
  double dt = 1e-3;
  double duration = 0;

  PhaseTable phases;

  Mat3d upsilon = 5.0 * Mat3d::Identity();  ///< master-to-remote position scaling
  Mat3d omega = Vec3d(1.0, 1.0, 0.2).asDiagonal();  ///< remote-to-master force scaling
  double position_delay = 0;  ///< s, master-to-remote channel
  double force_delay = 0;     ///< s, remote-to-master channel

  PlatformMode platform_mode = PlatformMode::Ideal;
  double inertia_comp_gain = 0;  ///< fraction of the delayed estimate fed back
  Vec5d foot_stiffness{2000, 2000, 50, 50, 50};
  Vec5d foot_damping{150, 150, 3, 3, 3};

  ArmParams arm;
  DampingSpec damping;
  double orientation_kp = 25;
  double orientation_kd = 10;

  bool object_present = false;
  GraspObject object;
  double object_friction = 0.5;  ///< N*s/m tangential coupling per contact

  DisturbanceConfig disturbance;

  SideConfig left;
  SideConfig right;

  void validate() const;
};

/// Reads the key/value scenario format (see the scenario format notes in the
/// README).  Unknown sections or keys, malformed values and inconsistent
/// tables all raise ParseError with the offending location.
ScenarioConfig parse_scenario_file(const std::string& path);

/// Same grammar, parsed from memory; `origin` names the source in errors.
ScenarioConfig parse_scenario_text(const std::string& text, const std::string& origin);

}  // namespace teleped
