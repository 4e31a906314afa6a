#include <CLI11.hpp>

#include <Eigen/Geometry>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <string>

#include "teleped/csv.hpp"
#include "teleped/kinematics.hpp"
#include "teleped/metrics.hpp"
#include "teleped/scenario.hpp"
#include "teleped/teleop.hpp"
#include "teleped/trace.hpp"
#include "teleped/workspace.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitFault = 4;

double parse_number(std::string_view text, const std::string& what) {
  double v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw std::invalid_argument(what + ": expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

/// Lengths are meters by default; a trailing `mm` converts from millimeters.
double parse_length(const std::string& text, const std::string& what) {
  std::string_view v(text);
  double scale = 1.0;
  if (v.ends_with("mm")) {
    v.remove_suffix(2);
    scale = 1e-3;
  }
  return scale * parse_number(v, what);
}

/// Angles are radians by default; a trailing `deg` converts from degrees.
double parse_angle(const std::string& text, const std::string& what) {
  std::string_view v(text);
  double scale = 1.0;
  if (v.ends_with("deg")) {
    v.remove_suffix(3);
    scale = std::numbers::pi / 180.0;
  }
  return scale * parse_number(v, what);
}

/// Suppresses "-0.000" artifacts in fixed-precision output.
double clean(double v) { return std::abs(v) < 1e-12 ? 0.0 : v; }

teleped::PlatformJoints<double> parse_joint_args(const std::vector<std::string>& args) {
  teleped::PlatformJoints<double> q;
  q.d1 = parse_length(args[0], "d1");
  q.d2 = parse_length(args[1], "d2");
  q.theta = parse_angle(args[2], "theta");
  q.phi = parse_angle(args[3], "phi");
  q.psi = parse_angle(args[4], "psi");
  return q;
}

teleped::PlatformJoints<double> check_limits(const teleped::PlatformJoints<double>& q,
                                             bool strict) {
  const auto limits = teleped::JointLimits<double>::standard();
  if (limits.contains(q)) {
    return q;
  }
  if (strict) {
    throw std::domain_error("joint values outside mechanical limits");
  }
  std::fprintf(stderr, "warning: joint values outside mechanical limits, clamping\n");
  return limits.clamp(q);
}

int cmd_fk(const std::vector<std::string>& joint_args, bool strict, bool frames, int precision) {
  const teleped::KinematicChain<double> chain;
  const auto q = check_limits(parse_joint_args(joint_args), strict);
  const teleped::Vec3d tip = tip_position(chain, q);
  if (frames) {
    static const char* labels[] = {"1", "2", "2*", "3", "4", "4*", "5", "6", "7"};
    const auto all = forward_kinematics(chain, q);
    for (std::size_t i = 0; i < all.size(); ++i) {
      const Eigen::Quaterniond rot(all[i].rotation);
      const teleped::Vec3d& p = all[i].translation;
      std::printf("frame %-2s: t = (%.*f, %.*f, %.*f)  q = (%.6f, %.6f, %.6f, %.6f)\n",
                  labels[i], precision, clean(p.x()), precision, clean(p.y()), precision,
                  clean(p.z()), clean(rot.w()), clean(rot.x()), clean(rot.y()), clean(rot.z()));
    }
  }
  std::printf("tip: %.*f %.*f %.*f\n", precision, clean(tip.x()), precision, clean(tip.y()),
              precision, clean(tip.z()));
  return kExitOk;
}

int cmd_jacobian(const std::vector<std::string>& joint_args, bool strict) {
  const teleped::KinematicChain<double> chain;
  const auto q = check_limits(parse_joint_args(joint_args), strict);
  const teleped::Mat35d jac = translational_jacobian(chain, q);
  for (int r = 0; r < 3; ++r) {
    std::printf("% .6f % .6f % .6f % .6f % .6f\n", clean(jac(r, 0)), clean(jac(r, 1)),
                clean(jac(r, 2)), clean(jac(r, 3)), clean(jac(r, 4)));
  }
  return kExitOk;
}

int cmd_workspace(const teleped::WorkspaceOptions& options, const std::string& cloud_path,
                  const std::string& summary_path) {
  const teleped::KinematicChain<double> chain;
  const auto limits = teleped::JointLimits<double>::standard();
  const teleped::WorkspaceResult result = sample_workspace(chain, limits, options);

  if (!cloud_path.empty()) {
    std::ofstream out(cloud_path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot open for writing: " + cloud_path);
    }
    out << "x,y,z\n";
    for (const teleped::Vec3d& p : result.cloud) {
      out << teleped::csv::format(p.x()) << ',' << teleped::csv::format(p.y()) << ','
          << teleped::csv::format(p.z()) << '\n';
    }
  }
  if (!summary_path.empty()) {
    std::ofstream out(summary_path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot open for writing: " + summary_path);
    }
    out << "volume_m3,rect_x_m,rect_y_m\n"
        << teleped::csv::format(result.volume_m3) << ',' << teleped::csv::format(result.rect_x_m)
        << ',' << teleped::csv::format(result.rect_y_m) << '\n';
  }

  std::printf("samples: %zu\n", result.sample_count);
  std::printf("occupied voxels: %zu (edge %.4f m)\n", result.occupied_voxels, options.voxel);
  std::printf("volume: %.4f m^3\n", result.volume_m3);
  std::printf("slide rectangle: %.3f x %.3f m\n", result.rect_x_m, result.rect_y_m);
  if (!cloud_path.empty()) {
    std::printf("cloud: %s (%zu points)\n", cloud_path.c_str(), result.cloud.size());
  }
  return kExitOk;
}

int cmd_simulate(const std::string& scenario_path, const std::string& trace_path,
                 const std::string& metrics_path, bool quiet) {
  const teleped::ScenarioConfig config = teleped::parse_scenario_file(scenario_path);
  const teleped::SimTrace trace = teleped::run_scenario(config);
  trace.write_csv_file(trace_path);
  const teleped::MetricsReport report = compute_metrics(trace);
  {
    std::ofstream out(metrics_path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot open for writing: " + metrics_path);
    }
    out << report.to_csv();
  }
  if (!quiet) {
    std::printf("scenario: %s\n", config.name.c_str());
    std::printf("steps: %zu (dt %.4g s)\n", trace.records.size(), config.dt);
    for (const teleped::MetricRow& row : report.rows) {
      std::printf("%-16s %-8s %s  %.6f\n", row.metric.c_str(), row.phase_group.c_str(),
                  row.axis.c_str(), row.value);
    }
    std::printf("trace: %s\n", trace_path.c_str());
    std::printf("metrics: %s\n", metrics_path.c_str());
  }
  return kExitOk;
}

int cmd_metrics(const std::string& trace_path, const std::string& out_path) {
  const teleped::SimTrace trace = teleped::SimTrace::read_csv_file(trace_path);
  const teleped::MetricsReport report = compute_metrics(trace);
  if (out_path.empty()) {
    std::fputs(report.to_csv().c_str(), stdout);
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot open for writing: " + out_path);
    }
    out << report.to_csv();
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Foot-platform telemanipulation toolbox"};
  app.require_subcommand(1);

  std::vector<std::string> joint_args;
  bool strict = false;
  bool frames = false;
  int precision = 3;

  CLI::App* fk = app.add_subcommand("fk", "Tip pose for a joint configuration");
  fk->add_option("joints", joint_args,
                 "d1 d2 theta phi psi (meters/radians; 'mm' and 'deg' suffixes accepted)")
      ->expected(5)
      ->required();
  fk->add_flag("--strict", strict, "fail instead of clamping out-of-limit joints");
  fk->add_flag("--frames", frames, "also print every intermediate frame");
  fk->add_option("--precision", precision, "digits after the decimal point")
      ->check(CLI::Range(0, 17));

  CLI::App* jac = app.add_subcommand("jacobian", "Translational Jacobian at a configuration");
  jac->add_option("joints", joint_args, "d1 d2 theta phi psi")->expected(5)->required();
  jac->add_flag("--strict", strict, "fail instead of clamping out-of-limit joints");

  teleped::WorkspaceOptions wopt;
  std::string voxel_text = "0.005";
  std::string cloud_path;
  std::string summary_path;
  CLI::App* ws = app.add_subcommand("workspace", "Reachable-volume estimate");
  ws->add_option("--samples", wopt.monte_carlo_n, "Monte-Carlo sample count")
      ->check(CLI::PositiveNumber);
  ws->add_option("--grid", wopt.samples_per_axis,
                 "lattice samples per joint axis (replaces Monte-Carlo)")
      ->check(CLI::PositiveNumber);
  ws->add_option("--voxel", voxel_text, "occupancy voxel edge ('mm' suffix accepted)");
  ws->add_option("--seed", wopt.seed, "Monte-Carlo seed");
  ws->add_flag("--freeze-rotations", wopt.freeze_rotations,
               "sample the slide axes only, rotations pinned at zero");
  ws->add_option("--cloud", cloud_path, "write tip samples to this CSV");
  ws->add_option("--cloud-stride", wopt.cloud_stride, "keep every k-th sample in the cloud");
  ws->add_option("--summary", summary_path, "write volume/rectangle summary CSV");

  std::string scenario_path;
  std::string trace_path = "trace.csv";
  std::string metrics_path = "metrics.csv";
  bool quiet = false;
  CLI::App* sim = app.add_subcommand("simulate", "Run a scripted scenario");
  sim->add_option("scenario", scenario_path, "scenario file")->required();
  sim->add_option("--trace", trace_path, "trace CSV output path");
  sim->add_option("--metrics", metrics_path, "metrics CSV output path");
  sim->add_flag("--quiet", quiet, "suppress the stdout summary");

  std::string metrics_in;
  std::string metrics_out;
  CLI::App* met = app.add_subcommand("metrics", "Recompute metrics from a trace CSV");
  met->add_option("trace", metrics_in, "trace CSV file")->required();
  met->add_option("--out", metrics_out, "metrics CSV output path (default: stdout)");

  try {
    app.parse(argc, argv);

    if (fk->parsed()) {
      return cmd_fk(joint_args, strict, frames, precision);
    }
    if (jac->parsed()) {
      return cmd_jacobian(joint_args, strict);
    }
    if (ws->parsed()) {
      wopt.voxel = parse_length(voxel_text, "--voxel");
      if (ws->count("--cloud") > 0 && wopt.cloud_stride == 0) {
        wopt.cloud_stride = 32;
      }
      return cmd_workspace(wopt, cloud_path, summary_path);
    }
    if (sim->parsed()) {
      return cmd_simulate(scenario_path, trace_path, metrics_path, quiet);
    }
    if (met->parsed()) {
      return cmd_metrics(metrics_in, metrics_out);
    }
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  } catch (const teleped::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  } catch (const teleped::SimulationFault& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFault;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}
