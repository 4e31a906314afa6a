#pragma once

#include <string>
#include <vector>

#include "teleped/trace.hpp"

namespace teleped {

struct MetricRow {
  std::string metric;       ///< e.g. left_pos_rmse, right_force_rmse
  std::string phase_group;  ///< free | contact
  std::string axis;         ///< x | y | z
  double value = 0;
};

struct MetricsReport {
  std::vector<MetricRow> rows;

  std::string to_csv() const;
  const MetricRow* find(const std::string& metric, const std::string& group,
                        const std::string& axis) const;
};

/// Per-axis RMS tracking error (attractor minus arm position) for the free
/// {a, b, f} and contact {c, d, e} phase groups, plus per-axis RMS force
/// transparency error (measured tip force minus rendered desired force)
/// over the contact group.  Groups without samples produce no rows.
MetricsReport compute_metrics(const SimTrace& trace);

}  // namespace teleped
