#include "teleped/teleop.hpp"

#include <cmath>

#include "teleped/arm.hpp"
#include "teleped/channel.hpp"
#include "teleped/contact.hpp"
#include "teleped/platform.hpp"

namespace teleped {

namespace {

/// Everything one master/remote pair carries between steps.
struct SideRuntime {
  Mat3d mirror = Mat3d::Identity();
  Vec3d arm_base = Vec3d::Zero();
  Mat3d arm_target = Mat3d::Identity();
  HumanFootModel human;
  PlatformState platform;
  ArmState arm;
  DelayLine<Vec3d> tip_channel{0, Vec3d::Zero()};
  DelayLine<Vec3d> force_channel{0, Vec3d::Zero()};

  /// Reflected force produced last step (platform frame), entering the
  /// master channel this step.
  Vec3d reflected_out = Vec3d::Zero();

  // Per-step scratch, recorded into the trace.
  Vec3d rendered_force = Vec3d::Zero();
  Vec3d attractor = Vec3d::Zero();
  Vec3d tip_remote = Vec3d::Zero();
  Vec3d f_u = Vec3d::Zero();
  Vec3d f_ext = Vec3d::Zero();
  ContactResult probe;
  Vec3d arm_v_at_probe = Vec3d::Zero();
};

SideRuntime make_side(const ScenarioConfig& config, const SideConfig& side,
                      const PlatformParams& params) {
  SideRuntime rt;
  if (side.mirror) {
    rt.mirror = Vec3d(-1, 1, 1).asDiagonal();
  }
  rt.arm_base = side.arm_base;
  rt.arm_target = side.arm_orientation_target;

  rt.human.reference = side.foot_trajectory;
  rt.human.stiffness = config.foot_stiffness;
  rt.human.damping = config.foot_damping;

  rt.platform.q = params.limits.clamp(
      PlatformJoints<double>::from_vector(side.foot_trajectory.sample(0.0).position));

  const Vec3d tip0 = rt.mirror * tip_position(params.chain, rt.platform.q);
  rt.tip_channel = DelayLine<Vec3d>(delay_steps(config.position_delay, config.dt), tip0);
  rt.force_channel = DelayLine<Vec3d>(delay_steps(config.force_delay, config.dt), Vec3d::Zero());

  rt.arm.x = rt.arm_base + config.upsilon * tip0;
  rt.arm.orientation = rt.arm_target;
  return rt;
}

/// Total pulse-train force active at time t (applied to the object).
Vec3d disturbance_force(const ScenarioConfig& config, double t) {
  const DisturbanceConfig& d = config.disturbance;
  if (d.count <= 0) {
    return Vec3d::Zero();
  }
  const auto& phase =
      config.phases.phases[static_cast<std::size_t>(d.phase - 'a')];
  Vec3d total = Vec3d::Zero();
  for (int k = 0; k < d.count; ++k) {
    const double start = phase.start + d.offset + static_cast<double>(k) * d.interval;
    if (t >= start && t < start + d.duration) {
      total += d.force;
    }
  }
  return total;
}

}  // namespace

SimTrace run_scenario(const ScenarioConfig& config) {
  config.validate();

  const PlatformParams params = config.platform_mode == PlatformMode::Ideal
                                    ? PlatformParams::ideal()
                                    : PlatformParams::hardware();

  SideRuntime left = make_side(config, config.left, params);
  SideRuntime right = make_side(config, config.right, params);
  SideRuntime* sides[2] = {&left, &right};

  GraspObject object = config.object;
  Vec3d object_velocity = Vec3d::Zero();

  const double dt = config.dt;
  const auto step_count = static_cast<std::int64_t>(std::llround(config.duration / dt));

  SimTrace trace;
  trace.records.reserve(static_cast<std::size_t>(step_count));

  for (std::int64_t k = 0; k < step_count; ++k) {
    const double t = static_cast<double>(k) * dt;
    const char phase = config.phases.label_at(t);

    // Masters first: render last step's reflected force, advance the foot
    // platform dynamics, send the (mirrored) tip onward.
    for (SideRuntime* s : sides) {
      s->rendered_force = channel_transmit(s->reflected_out, s->force_channel);
      const Vec5d q_ddot_est = config.inertia_comp_gain * s->platform.q_ddot_prev;
      const Vec5d tau_u =
          platform_inverse_dynamics(params, s->platform.q, q_ddot_est, s->rendered_force);
      s->platform = platform_step(params, s->platform, s->human, tau_u, t, dt);
      const Vec3d tip = s->mirror * tip_position(params.chain, s->platform.q);
      s->tip_remote = channel_transmit(tip, s->tip_channel);
      s->attractor = s->arm_base + config.upsilon * s->tip_remote;
    }

    // Remote arms: attractor-following impedance control plus whatever the
    // environment applies.
    for (SideRuntime* s : sides) {
      const Vec3d x_dot_desired =
          ds_desired_velocity(s->tip_remote, s->arm.x - s->arm_base, config.upsilon);
      if (!x_dot_desired.allFinite() || !std::isfinite(x_dot_desired.squaredNorm())) {
        // Finite states can still overflow in the attractor arithmetic when a
        // run diverges; report it as a fault, not a precondition violation.
        throw SimulationFault("teleop", t, "desired velocity non-finite");
      }
      s->arm.damping_basis = damping_basis(x_dot_desired, s->arm.damping_basis);
      const Mat3d damping = damping_matrix_from_basis(s->arm.damping_basis, config.damping);
      s->f_u = impedance_control_force(damping, x_dot_desired, s->arm.x_dot, config.arm);

      s->f_ext = Vec3d::Zero();
      s->probe = ContactResult{};
      s->arm_v_at_probe = s->arm.x_dot;
      if (config.object_present) {
        s->probe = contact_probe(object, s->arm.x, s->arm.x_dot - object_velocity);
        if (s->probe.active) {
          const Mat3d tangent =
              Mat3d::Identity() - s->probe.normal * s->probe.normal.transpose();
          s->f_ext = s->probe.force -
                     config.object_friction * (tangent * (s->arm.x_dot - object_velocity));
        }
      }

      const Vec3d torque = orientation_pd_torque(
          orientation_error(s->arm.orientation, s->arm_target), s->arm.omega,
          config.orientation_kp, config.orientation_kd);
      s->arm = arm_step(config.arm, s->arm, s->f_u, s->f_ext, torque, t, dt);

      // What the arm exerts on the environment, routed back to the master in
      // that platform's own frame.
      s->reflected_out = config.omega * (s->mirror * Vec3d(-s->f_ext));
    }

    // Object: dynamic only while both arms hold it; otherwise it rests where
    // it is (supported by the table or not yet engaged).  Drag terms are
    // integrated implicitly in the object's own velocity — the light body
    // under stiff coupling is exactly where explicit integration blows up.
    if (config.object_present) {
      const bool grasped = left.probe.active && right.probe.active;
      if (grasped) {
        Mat3d drag = Mat3d::Zero();
        Vec3d force_const = object.mass * config.arm.gravity + disturbance_force(config, t);
        for (const SideRuntime* s : sides) {
          const Vec3d& n = s->probe.normal;
          const Mat3d tangent = Mat3d::Identity() - n * n.transpose();
          // Reaction to the spring (the damper reaction is folded into the
          // implicit terms below).
          force_const -= object.wall_stiffness * s->probe.penetration * n;
          force_const += config.object_friction * (tangent * s->arm_v_at_probe);
          drag += config.object_friction * tangent;
          const bool approaching = (s->arm_v_at_probe - object_velocity).dot(n) < 0;
          if (approaching) {
            force_const += object.wall_damping * s->arm_v_at_probe.dot(n) * n;
            drag += object.wall_damping * (n * n.transpose());
          }
        }
        const Mat3d lhs = (object.mass / dt) * Mat3d::Identity() + drag;
        object_velocity = lhs.llt().solve((object.mass / dt) * object_velocity + force_const);
        object.center += dt * object_velocity;
        if (!object.center.allFinite() || !object_velocity.allFinite()) {
          throw SimulationFault("object", t, "state became non-finite");
        }
      } else {
        object_velocity = Vec3d::Zero();
      }
    }

    TraceRecord rec;
    rec.t = t;
    rec.phase = phase;
    rec.q_left = left.platform.q.vector();
    rec.tip_force_left = left.platform.tip_force;
    rec.q_right = right.platform.q.vector();
    rec.tip_force_right = right.platform.tip_force;
    rec.arm_x_left = left.arm.x;
    rec.arm_v_left = left.arm.x_dot;
    rec.arm_fu_left = left.f_u;
    rec.arm_fe_left = left.f_ext;
    rec.arm_x_right = right.arm.x;
    rec.arm_v_right = right.arm.x_dot;
    rec.arm_fu_right = right.f_u;
    rec.arm_fe_right = right.f_ext;
    rec.attractor_left = left.attractor;
    rec.reflected_left = left.rendered_force;
    rec.attractor_right = right.attractor;
    rec.reflected_right = right.rendered_force;
    rec.object_position = object.center;
    trace.records.push_back(rec);
  }

  return trace;
}

}  // namespace teleped
