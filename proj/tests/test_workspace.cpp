#include <doctest.h>

#include "teleped/workspace.hpp"

using namespace teleped;

namespace {
const KinematicChain<double> kChain;
const JointLimits<double> kLimits = JointLimits<double>::standard();
}  // namespace

TEST_CASE("sample_workspace: rejects bad resolution and sample counts") {
  WorkspaceOptions opt;
  opt.voxel = 0;
  CHECK_THROWS_AS(sample_workspace(kChain, kLimits, opt), std::domain_error);
  opt.voxel = -0.01;
  CHECK_THROWS_AS(sample_workspace(kChain, kLimits, opt), std::domain_error);
  opt.voxel = 0.005;
  opt.monte_carlo_n = 0;
  CHECK_THROWS_AS(sample_workspace(kChain, kLimits, opt), std::domain_error);

  JointLimits<double> bad = kLimits;
  bad.lower[0] = bad.upper[0] + 1.0;
  CHECK_THROWS_AS(sample_workspace(kChain, bad, WorkspaceOptions{}), std::domain_error);
}

TEST_CASE("sample_workspace: degenerate joint box collapses to one voxel") {
  JointLimits<double> point;
  point.lower.setZero();
  point.upper.setZero();
  WorkspaceOptions opt;
  opt.monte_carlo_n = 100;
  opt.voxel = 0.01;
  const WorkspaceResult r = sample_workspace(kChain, point, opt);
  CHECK(r.occupied_voxels == 1);
  CHECK(r.volume_m3 == doctest::Approx(1e-6).epsilon(1e-12));
  CHECK(r.rect_x_m == 0.0);
  CHECK(r.rect_y_m == 0.0);
  CHECK(r.sample_count == 100);
}

TEST_CASE("sample_workspace: slide rectangle is exact at the prismatic limits") {
  WorkspaceOptions opt;
  opt.monte_carlo_n = 10;  // rectangle must not depend on the sampling budget
  const WorkspaceResult r = sample_workspace(kChain, kLimits, opt);
  CHECK(r.rect_x_m == doctest::Approx(0.293).epsilon(1e-12));
  CHECK(r.rect_y_m == doctest::Approx(0.350).epsilon(1e-12));
}

TEST_CASE("sample_workspace: volume estimate grows with the sampling budget") {
  WorkspaceOptions small;
  small.monte_carlo_n = 20'000;
  small.voxel = 0.01;
  WorkspaceOptions large = small;
  large.monte_carlo_n = 200'000;
  const WorkspaceResult rs = sample_workspace(kChain, kLimits, small);
  const WorkspaceResult rl = sample_workspace(kChain, kLimits, large);
  // Same seed: the small run's draws are a prefix of the large run's, so
  // occupancy can only grow.
  CHECK(rl.occupied_voxels > rs.occupied_voxels);
  CHECK(rl.volume_m3 > rs.volume_m3);
  CHECK(rs.volume_m3 > 0.01);
  CHECK(rl.volume_m3 < 0.25);
}

TEST_CASE("sample_workspace: deterministic for a fixed seed") {
  WorkspaceOptions opt;
  opt.monte_carlo_n = 50'000;
  opt.voxel = 0.01;
  opt.seed = 77;
  opt.cloud_stride = 1000;
  const WorkspaceResult a = sample_workspace(kChain, kLimits, opt);
  const WorkspaceResult b = sample_workspace(kChain, kLimits, opt);
  CHECK(a.occupied_voxels == b.occupied_voxels);
  CHECK(a.volume_m3 == b.volume_m3);
  REQUIRE(a.cloud.size() == b.cloud.size());
  CHECK(a.cloud.size() == 50);
  for (std::size_t i = 0; i < a.cloud.size(); ++i) {
    CHECK(a.cloud[i] == b.cloud[i]);
  }
}

TEST_CASE("sample_workspace: lattice mode sweeps the full joint box") {
  WorkspaceOptions opt;
  opt.samples_per_axis = 3;
  opt.voxel = 0.02;
  const WorkspaceResult r = sample_workspace(kChain, kLimits, opt);
  CHECK(r.sample_count == 243);  // 3^5
  CHECK(r.occupied_voxels > 0);
  CHECK(r.occupied_voxels <= 243);
}

TEST_CASE("sample_workspace: frozen rotations reduce to a thin slab") {
  WorkspaceOptions opt;
  opt.monte_carlo_n = 100'000;
  opt.voxel = 0.005;
  opt.freeze_rotations = true;
  const WorkspaceResult r = sample_workspace(kChain, kLimits, opt);
  // The slide patch is one voxel thick: its volume is roughly the exact
  // rectangle area times the voxel edge.
  const double slab = r.rect_x_m * r.rect_y_m * opt.voxel;
  CHECK(r.volume_m3 > 0.5 * slab);
  CHECK(r.volume_m3 < 2.0 * slab);
}
