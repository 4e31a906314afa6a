#pragma once

#include <cstdint>
#include <vector>

#include "teleped/kinematics.hpp"

namespace teleped {

/// Sampling controls for the reachable-volume estimate.  The Monte-Carlo
/// count and voxel edge are a matched pair: the reported volume is a
/// finite-resolution estimate whose voxel-coverage undercount and
/// voxel-boundary inflation roughly cancel at the defaults below.  Refining
/// one without the other shifts the figure (the fully converged sweep at
/// vanishing voxel size is substantially larger).
struct WorkspaceOptions {
  std::int64_t monte_carlo_n = 1'600'000;
  int samples_per_axis = 0;  ///< > 0 switches to a deterministic lattice sweep
  double voxel = 0.005;      ///< occupancy voxel edge, meters
  std::uint64_t seed = 1;
  std::size_t cloud_stride = 0;  ///< keep every k-th tip sample; 0 keeps none
  bool freeze_rotations = false; ///< sample the slide box only (diagnostic slice)
};

struct WorkspaceResult {
  double volume_m3 = 0;
  double rect_x_m = 0;  ///< tip x extent with rotations pinned at zero
  double rect_y_m = 0;  ///< tip y extent with rotations pinned at zero
  std::size_t occupied_voxels = 0;
  std::size_t sample_count = 0;
  std::vector<Vec3d> cloud;
};

/// Sweeps the joint box, bins tip positions into voxels and reports
/// occupied-voxel volume plus the zero-rotation slide rectangle.
WorkspaceResult sample_workspace(const KinematicChain<double>& chain,
                                 const JointLimits<double>& limits,
                                 const WorkspaceOptions& options = {});

}  // namespace teleped
