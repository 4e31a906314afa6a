#include "teleped/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace teleped {

JointTrajectory::JointTrajectory(std::vector<TrajectoryKnot> knots) : knots_(std::move(knots)) {
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i].t) || !knots_[i].q.allFinite()) {
      throw std::invalid_argument("trajectory knot must be finite");
    }
    if (i > 0 && !(knots_[i].t > knots_[i - 1].t)) {
      throw std::invalid_argument("trajectory knot times must be strictly increasing");
    }
  }
}

JointTrajectory JointTrajectory::hold(const Vec5d& q) {
  return JointTrajectory({{0.0, q}});
}

JointTrajectory::Sample JointTrajectory::sample(double t) const {
  Sample s;
  if (knots_.empty()) {
    return s;
  }
  if (t <= knots_.front().t) {
    s.position = knots_.front().q;
    return s;
  }
  if (t >= knots_.back().t) {
    s.position = knots_.back().q;
    return s;
  }
  const auto it = std::upper_bound(
      knots_.begin(), knots_.end(), t,
      [](double value, const TrajectoryKnot& k) { return value < k.t; });
  const TrajectoryKnot& hi = *it;
  const TrajectoryKnot& lo = *(it - 1);
  const double span = hi.t - lo.t;
  const double alpha = (t - lo.t) / span;
  s.velocity = (hi.q - lo.q) / span;
  s.position = lo.q + alpha * (hi.q - lo.q);
  return s;
}

}  // namespace teleped
