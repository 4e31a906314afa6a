#pragma once

#include <vector>

#include "teleped/types.hpp"

namespace teleped {

struct TrajectoryKnot {
  double t = 0;
  Vec5d q = Vec5d::Zero();
};

/// Piecewise-linear joint reference.  Holds the first/last knot value with
/// zero velocity outside the knot span; inside a segment the velocity is the
/// segment slope (right-continuous at knots).
class JointTrajectory {
 public:
  JointTrajectory() = default;  ///< empty trajectory holds the zero vector
  explicit JointTrajectory(std::vector<TrajectoryKnot> knots);

  static JointTrajectory hold(const Vec5d& q);

  struct Sample {
    Vec5d position = Vec5d::Zero();
    Vec5d velocity = Vec5d::Zero();
  };

  Sample sample(double t) const;

  bool empty() const { return knots_.empty(); }
  double end_time() const { return knots_.empty() ? 0.0 : knots_.back().t; }
  const std::vector<TrajectoryKnot>& knots() const { return knots_; }

 private:
  std::vector<TrajectoryKnot> knots_;
};

}  // namespace teleped
