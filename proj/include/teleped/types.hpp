#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace teleped {

template <typename Scalar> using Vec3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar> using Vec5 = Eigen::Matrix<Scalar, 5, 1>;
template <typename Scalar> using Mat3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar> using Mat35 = Eigen::Matrix<Scalar, 3, 5>;
template <typename Scalar> using Mat53 = Eigen::Matrix<Scalar, 5, 3>;

using Vec3d = Vec3<double>;
using Vec5d = Vec5<double>;
using Mat3d = Mat3<double>;
using Mat35d = Mat35<double>;
using Mat53d = Mat53<double>;

/// Raised by the text-format readers (scenario files, trace files) with the
/// 1-based location of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& file, std::size_t line, std::size_t column,
             const std::string& message)
      : std::runtime_error(file + ":" + std::to_string(line) + ":" + std::to_string(column) +
                           ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Raised when a time-stepping routine produces a non-finite state.  Carries
/// enough context (time, subsystem) to locate the blow-up in a long run.
class SimulationFault : public std::runtime_error {
 public:
  SimulationFault(const std::string& subsystem, double time, const std::string& detail)
      : std::runtime_error("simulation fault in " + subsystem + " at t=" +
                           std::to_string(time) + ": " + detail),
        subsystem_(subsystem),
        time_(time) {}

  const std::string& subsystem() const { return subsystem_; }
  double time() const { return time_; }

 private:
  std::string subsystem_;
  double time_;
};

}  // namespace teleped
