#include "teleped/trace.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "teleped/csv.hpp"

namespace teleped {

namespace {

constexpr int kColumnCount = 57;

void append_vec(std::string& line, const double* data, int n) {
  for (int i = 0; i < n; ++i) {
    line += ',';
    line += csv::format(data[i]);
  }
}

}  // namespace

const std::string& SimTrace::csv_header() {
  static const std::string header =
      "t,"
      "l_q_d1,l_q_d2,l_q_theta,l_q_phi,l_q_psi,l_fx,l_fy,l_fz,"
      "r_q_d1,r_q_d2,r_q_theta,r_q_phi,r_q_psi,r_fx,r_fy,r_fz,"
      "l_x,l_y,l_z,l_vx,l_vy,l_vz,l_fux,l_fuy,l_fuz,l_fex,l_fey,l_fez,"
      "r_x,r_y,r_z,r_vx,r_vy,r_vz,r_fux,r_fuy,r_fuz,r_fex,r_fey,r_fez,"
      "l_ax,l_ay,l_az,l_frx,l_fry,l_frz,"
      "r_ax,r_ay,r_az,r_frx,r_fry,r_frz,"
      "ox,oy,oz,phase";
  return header;
}

void SimTrace::write_csv(std::ostream& out) const {
  out << csv_header() << '\n';
  std::string line;
  for (const TraceRecord& r : records) {
    line.clear();
    line += csv::format(r.t);
    append_vec(line, r.q_left.data(), 5);
    append_vec(line, r.tip_force_left.data(), 3);
    append_vec(line, r.q_right.data(), 5);
    append_vec(line, r.tip_force_right.data(), 3);
    append_vec(line, r.arm_x_left.data(), 3);
    append_vec(line, r.arm_v_left.data(), 3);
    append_vec(line, r.arm_fu_left.data(), 3);
    append_vec(line, r.arm_fe_left.data(), 3);
    append_vec(line, r.arm_x_right.data(), 3);
    append_vec(line, r.arm_v_right.data(), 3);
    append_vec(line, r.arm_fu_right.data(), 3);
    append_vec(line, r.arm_fe_right.data(), 3);
    append_vec(line, r.attractor_left.data(), 3);
    append_vec(line, r.reflected_left.data(), 3);
    append_vec(line, r.attractor_right.data(), 3);
    append_vec(line, r.reflected_right.data(), 3);
    append_vec(line, r.object_position.data(), 3);
    line += ',';
    line += r.phase;
    out << line << '\n';
  }
}

void SimTrace::write_csv_file(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path);
  }
  write_csv(out);
  out.flush();
  if (!out) {
    throw std::runtime_error("failed writing trace to " + path);
  }
}

SimTrace SimTrace::read_csv(std::istream& in, const std::string& origin) {
  SimTrace trace;
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) {
    throw ParseError(origin, 1, 1, "empty trace file");
  }
  ++line_no;
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  if (line != csv_header()) {
    throw ParseError(origin, 1, 1, "unrecognized trace header");
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const auto fields = csv::split(line, ',');
    if (fields.size() != kColumnCount) {
      throw ParseError(origin, line_no, 1,
                       "expected " + std::to_string(kColumnCount) + " columns, got " +
                           std::to_string(fields.size()));
    }
    const auto column_of = [&](int idx) {
      return static_cast<std::size_t>(fields[static_cast<std::size_t>(idx)].data() - line.data()) +
             1;
    };
    int idx = 0;
    const auto next = [&]() -> double {
      const auto field = fields[static_cast<std::size_t>(idx)];
      try {
        double v = csv::parse_double(field);
        ++idx;
        return v;
      } catch (const std::invalid_argument& e) {
        throw ParseError(origin, line_no, column_of(idx), e.what());
      }
    };
    const auto next_vec = [&](double* data, int n) {
      for (int i = 0; i < n; ++i) {
        data[i] = next();
      }
    };

    TraceRecord r;
    r.t = next();
    next_vec(r.q_left.data(), 5);
    next_vec(r.tip_force_left.data(), 3);
    next_vec(r.q_right.data(), 5);
    next_vec(r.tip_force_right.data(), 3);
    next_vec(r.arm_x_left.data(), 3);
    next_vec(r.arm_v_left.data(), 3);
    next_vec(r.arm_fu_left.data(), 3);
    next_vec(r.arm_fe_left.data(), 3);
    next_vec(r.arm_x_right.data(), 3);
    next_vec(r.arm_v_right.data(), 3);
    next_vec(r.arm_fu_right.data(), 3);
    next_vec(r.arm_fe_right.data(), 3);
    next_vec(r.attractor_left.data(), 3);
    next_vec(r.reflected_left.data(), 3);
    next_vec(r.attractor_right.data(), 3);
    next_vec(r.reflected_right.data(), 3);
    next_vec(r.object_position.data(), 3);
    const auto phase_field = fields.back();
    if (phase_field.size() != 1 || phase_field[0] < 'a' || phase_field[0] > 'f') {
      throw ParseError(origin, line_no, column_of(kColumnCount - 1), "bad phase label");
    }
    r.phase = phase_field[0];
    trace.records.push_back(r);
  }
  return trace;
}

SimTrace SimTrace::read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(path, 0, 0, "cannot open trace file");
  }
  return read_csv(in, path);
}

}  // namespace teleped
