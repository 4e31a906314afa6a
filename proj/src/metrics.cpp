#include "teleped/metrics.hpp"

#include <cmath>

#include "teleped/csv.hpp"
#include "teleped/scenario.hpp"

namespace teleped {

namespace {

struct Accumulator {
  Vec3d sum_sq = Vec3d::Zero();
  std::size_t count = 0;

  void add(const Vec3d& err) {
    sum_sq += err.cwiseProduct(err);
    ++count;
  }
};

void emit(std::vector<MetricRow>& rows, const std::string& metric, const std::string& group,
          const Accumulator& acc) {
  if (acc.count == 0) {
    return;
  }
  static const char* axes[3] = {"x", "y", "z"};
  for (int i = 0; i < 3; ++i) {
    rows.push_back({metric, group, axes[i],
                    std::sqrt(acc.sum_sq[i] / static_cast<double>(acc.count))});
  }
}

}  // namespace

std::string MetricsReport::to_csv() const {
  std::string out = "metric,phase_group,axis,value\n";
  for (const MetricRow& r : rows) {
    out += r.metric;
    out += ',';
    out += r.phase_group;
    out += ',';
    out += r.axis;
    out += ',';
    out += csv::format(r.value);
    out += '\n';
  }
  return out;
}

const MetricRow* MetricsReport::find(const std::string& metric, const std::string& group,
                                     const std::string& axis) const {
  for (const MetricRow& r : rows) {
    if (r.metric == metric && r.phase_group == group && r.axis == axis) {
      return &r;
    }
  }
  return nullptr;
}

MetricsReport compute_metrics(const SimTrace& trace) {
  Accumulator pos_left[2], pos_right[2];   // [free, contact]
  Accumulator force_left, force_right;     // contact only

  for (const TraceRecord& r : trace.records) {
    const int g = PhaseTable::group_of(r.phase) == PhaseGroup::Free ? 0 : 1;
    pos_left[g].add(r.attractor_left - r.arm_x_left);
    pos_right[g].add(r.attractor_right - r.arm_x_right);
    if (g == 1) {
      force_left.add(r.tip_force_left - r.reflected_left);
      force_right.add(r.tip_force_right - r.reflected_right);
    }
  }

  MetricsReport report;
  emit(report.rows, "left_pos_rmse", "free", pos_left[0]);
  emit(report.rows, "left_pos_rmse", "contact", pos_left[1]);
  emit(report.rows, "right_pos_rmse", "free", pos_right[0]);
  emit(report.rows, "right_pos_rmse", "contact", pos_right[1]);
  emit(report.rows, "left_force_rmse", "contact", force_left);
  emit(report.rows, "right_force_rmse", "contact", force_right);
  return report;
}

}  // namespace teleped
