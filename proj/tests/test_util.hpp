#pragma once

#include <cstdint>
#include <random>

#include "teleped/kinematics.hpp"

namespace teleped::testutil {

/// Deterministic uniform in [0, 1): fixed bit recipe on top of mt19937_64 so
/// sequences never depend on the standard library's distribution choices.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline PlatformJoints<double> random_joints(std::mt19937_64& rng, const JointLimits<double>& lim) {
  Vec5d v;
  for (int i = 0; i < 5; ++i) {
    v[i] = uniform(rng, lim.lower[i], lim.upper[i]);
  }
  return PlatformJoints<double>::from_vector(v);
}

}  // namespace teleped::testutil
