#include "teleped/workspace.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace teleped {

namespace {

/// Deterministic uniform in [0, 1): fixed bit recipe so results never depend
/// on the standard library's distribution implementation.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Packs a signed voxel index triple into one key.  21 bits per axis covers
/// +-1e6 voxels, far beyond any mechanism this size.
std::uint64_t pack_voxel(const Vec3d& p, double voxel) {
  constexpr std::int64_t bias = std::int64_t(1) << 20;
  std::uint64_t key = 0;
  for (int i = 0; i < 3; ++i) {
    const std::int64_t idx = static_cast<std::int64_t>(std::floor(p[i] / voxel)) + bias;
    if (idx < 0 || idx >= (std::int64_t(1) << 21)) {
      throw std::domain_error("sample_workspace: tip position out of voxel index range");
    }
    key = (key << 21) | static_cast<std::uint64_t>(idx);
  }
  return key;
}

}  // namespace

WorkspaceResult sample_workspace(const KinematicChain<double>& chain,
                                 const JointLimits<double>& limits,
                                 const WorkspaceOptions& options) {
  if (!(options.voxel > 0)) {
    throw std::domain_error("sample_workspace: voxel edge must be positive");
  }
  if (options.samples_per_axis <= 0 && options.monte_carlo_n <= 0) {
    throw std::domain_error("sample_workspace: sample count must be positive");
  }
  if (((limits.upper - limits.lower).array() < 0).any()) {
    throw std::domain_error("sample_workspace: joint limits must satisfy lower <= upper");
  }

  WorkspaceResult result;

  // Zero-rotation rectangle: the slides enter the tip map linearly, so the
  // extent over the slide box is exactly the extent over its four corners.
  {
    double x_min = 0, x_max = 0, y_min = 0, y_max = 0;
    bool first = true;
    for (const double d1 : {limits.lower[0], limits.upper[0]}) {
      for (const double d2 : {limits.lower[1], limits.upper[1]}) {
        const Vec3d tip = closed_form_tip(chain, PlatformJoints<double>{d1, d2, 0, 0, 0});
        if (first) {
          x_min = x_max = tip.x();
          y_min = y_max = tip.y();
          first = false;
        } else {
          x_min = std::min(x_min, tip.x());
          x_max = std::max(x_max, tip.x());
          y_min = std::min(y_min, tip.y());
          y_max = std::max(y_max, tip.y());
        }
      }
    }
    result.rect_x_m = x_max - x_min;
    result.rect_y_m = y_max - y_min;
  }

  Vec5d lo = limits.lower;
  Vec5d hi = limits.upper;
  if (options.freeze_rotations) {
    for (int i = 2; i < 5; ++i) {
      lo[i] = 0;
      hi[i] = 0;
    }
  }

  std::vector<std::uint64_t> keys;
  const auto visit = [&](const Vec5d& qv) {
    const Vec3d tip = closed_form_tip(chain, PlatformJoints<double>::from_vector(qv));
    keys.push_back(pack_voxel(tip, options.voxel));
    if (options.cloud_stride > 0 && result.sample_count % options.cloud_stride == 0) {
      result.cloud.push_back(tip);
    }
    ++result.sample_count;
  };

  if (options.samples_per_axis > 0) {
    const int n = options.samples_per_axis;
    keys.reserve(static_cast<std::size_t>(std::pow(static_cast<double>(n), 5)));
    const auto coord = [&](int axis, int i) {
      if (n == 1) return 0.5 * (lo[axis] + hi[axis]);
      return lo[axis] + (hi[axis] - lo[axis]) * static_cast<double>(i) / static_cast<double>(n - 1);
    };
    Vec5d qv;
    for (int i0 = 0; i0 < n; ++i0) {
      qv[0] = coord(0, i0);
      for (int i1 = 0; i1 < n; ++i1) {
        qv[1] = coord(1, i1);
        for (int i2 = 0; i2 < n; ++i2) {
          qv[2] = coord(2, i2);
          for (int i3 = 0; i3 < n; ++i3) {
            qv[3] = coord(3, i3);
            for (int i4 = 0; i4 < n; ++i4) {
              qv[4] = coord(4, i4);
              visit(qv);
            }
          }
        }
      }
    }
  } else {
    std::mt19937_64 rng(options.seed);
    keys.reserve(static_cast<std::size_t>(options.monte_carlo_n));
    Vec5d qv;
    for (std::int64_t k = 0; k < options.monte_carlo_n; ++k) {
      for (int i = 0; i < 5; ++i) {
        qv[i] = lo[i] + (hi[i] - lo[i]) * uniform01(rng);
      }
      visit(qv);
    }
  }

  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  result.occupied_voxels = keys.size();
  result.volume_m3 =
      static_cast<double>(keys.size()) * options.voxel * options.voxel * options.voxel;
  return result;
}

}  // namespace teleped
