#include "teleped/scenario.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

namespace teleped {

int PhaseTable::index_at(double t) const {
  for (std::size_t i = 0; i < phases.size(); ++i) {
    if (t < phases[i].end) {
      return static_cast<int>(i);
    }
  }
  return static_cast<int>(phases.size()) - 1;
}

PhaseGroup PhaseTable::group_of(char label) {
  switch (label) {
    case 'a':
    case 'b':
    case 'f':
      return PhaseGroup::Free;
    case 'c':
    case 'd':
    case 'e':
      return PhaseGroup::Contact;
    default:
      throw std::domain_error(std::string("unknown phase label '") + label + "'");
  }
}

void PhaseTable::validate(double duration) const {
  constexpr double tol = 1e-9;
  for (std::size_t i = 0; i < phases.size(); ++i) {
    if (phases[i].label != static_cast<char>('a' + i)) {
      throw std::domain_error("phase labels must be a..f in order");
    }
    if (!(phases[i].end > phases[i].start)) {
      throw std::domain_error(std::string("phase '") + phases[i].label + "' must have end > start");
    }
    if (i > 0 && std::abs(phases[i].start - phases[i - 1].end) > tol) {
      throw std::domain_error(std::string("phase '") + phases[i].label +
                              "' must start where the previous phase ends");
    }
  }
  if (std::abs(phases.front().start) > tol) {
    throw std::domain_error("phase 'a' must start at t = 0");
  }
  if (std::abs(phases.back().end - duration) > tol) {
    throw std::domain_error("phase 'f' must end at the scenario duration");
  }
}

void ScenarioConfig::validate() const {
  if (!(dt > 0) || !std::isfinite(dt)) {
    throw std::domain_error("scenario: dt must be positive");
  }
  if (!(duration > 0) || !std::isfinite(duration)) {
    throw std::domain_error("scenario: duration must be positive");
  }
  phases.validate(duration);
  if (!upsilon.allFinite() || !omega.allFinite()) {
    throw std::domain_error("scenario: scaling matrices must be finite");
  }
  if (position_delay < 0 || force_delay < 0) {
    throw std::domain_error("scenario: channel delays must be non-negative");
  }
  if (inertia_comp_gain < 0 || inertia_comp_gain >= 1) {
    throw std::domain_error(
        "scenario: inertia compensation gain must lie in [0, 1) (full feedback is unstable)");
  }
  if ((foot_stiffness.array() < 0).any() || (foot_damping.array() < 0).any()) {
    throw std::domain_error("scenario: foot gains must be non-negative");
  }
  if (!(arm.mass > 0) || !(arm.rotational_inertia > 0)) {
    throw std::domain_error("scenario: arm inertias must be positive");
  }
  damping.validate();
  if (orientation_kp < 0 || orientation_kd < 0) {
    throw std::domain_error("scenario: orientation gains must be non-negative");
  }
  if (object_present) {
    object.validate();
    if (object_friction < 0) {
      throw std::domain_error("scenario: grasp friction must be non-negative");
    }
  }
  if (disturbance.count < 0 || disturbance.duration < 0 || disturbance.interval < 0 ||
      disturbance.offset < 0) {
    throw std::domain_error("scenario: disturbance timing must be non-negative");
  }
}

namespace {

struct Token {
  std::string_view text;
  std::size_t offset;  // 0-based within the line
};

std::vector<Token> tokenize(std::string_view value, std::size_t base_offset) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < value.size()) {
    while (i < value.size() && (value[i] == ' ' || value[i] == '\t')) ++i;
    if (i >= value.size()) break;
    std::size_t start = i;
    while (i < value.size() && value[i] != ' ' && value[i] != '\t') ++i;
    out.push_back({value.substr(start, i - start), base_offset + start});
  }
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, const std::string& origin) : text_(text), origin_(origin) {}

  ScenarioConfig run() {
    std::istringstream stream(text_);
    std::string raw;
    while (std::getline(stream, raw)) {
      ++line_no_;
      line_ = raw;
      parse_line(raw);
    }
    finish();
    return config_;
  }

 private:
  [[noreturn]] void fail(std::size_t column, const std::string& message) const {
    throw ParseError(origin_, line_no_, column, message);
  }

  void parse_line(std::string_view line) {
    // Strip comment and trailing whitespace.
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    std::size_t end = line.size();
    while (end > 0 && (line[end - 1] == ' ' || line[end - 1] == '\t' || line[end - 1] == '\r')) {
      --end;
    }
    line = line.substr(0, end);
    std::size_t begin = 0;
    while (begin < line.size() && (line[begin] == ' ' || line[begin] == '\t')) {
      ++begin;
    }
    if (begin == line.size()) {
      return;  // blank or comment-only
    }

    if (line[begin] == '[') {
      const std::size_t close = line.find(']', begin);
      if (close == std::string_view::npos || close != line.size() - 1) {
        fail(begin + 1, "malformed section header");
      }
      section_ = std::string(line.substr(begin + 1, close - begin - 1));
      if (section_ == "phases") {
        phases_line_ = line_no_;
      }
      if (!known_section(section_)) {
        fail(begin + 2, "unknown section [" + section_ + "]");
      }
      return;
    }

    const std::size_t eq = line.find('=', begin);
    if (eq == std::string_view::npos) {
      fail(begin + 1, "expected 'key = value'");
    }
    std::size_t key_end = eq;
    while (key_end > begin && (line[key_end - 1] == ' ' || line[key_end - 1] == '\t')) {
      --key_end;
    }
    const std::string key(line.substr(begin, key_end - begin));
    std::size_t value_begin = eq + 1;
    while (value_begin < line.size() && (line[value_begin] == ' ' || line[value_begin] == '\t')) {
      ++value_begin;
    }
    const std::string_view value = line.substr(value_begin);
    if (key.empty()) {
      fail(begin + 1, "empty key");
    }
    if (value.empty()) {
      fail(value_begin + 1, "empty value for '" + key + "'");
    }
    if (section_.empty()) {
      fail(begin + 1, "key outside any section");
    }
    dispatch(key, value, value_begin);
  }

  static bool known_section(const std::string& s) {
    return s == "scenario" || s == "phases" || s == "telefunctioning" || s == "platform" ||
           s == "arm" || s == "object" || s == "disturbance" || s == "left" || s == "right" ||
           s == "trajectory.left" || s == "trajectory.right";
  }

  double number(const Token& tok) const {
    double v = 0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) {
      fail(tok.offset + 1, "expected a number, got '" + std::string(tok.text) + "'");
    }
    return v;
  }

  std::vector<Token> exactly(std::string_view value, std::size_t value_begin, std::size_t n,
                             const std::string& key) const {
    auto toks = tokenize(value, value_begin);
    if (toks.size() != n) {
      fail(value_begin + 1, "'" + key + "' expects " + std::to_string(n) + " values, got " +
                                std::to_string(toks.size()));
    }
    return toks;
  }

  double scalar(std::string_view value, std::size_t value_begin, const std::string& key) const {
    return number(exactly(value, value_begin, 1, key)[0]);
  }

  bool boolean(std::string_view value, std::size_t value_begin, const std::string& key) const {
    const auto toks = exactly(value, value_begin, 1, key);
    if (toks[0].text == "true") return true;
    if (toks[0].text == "false") return false;
    fail(toks[0].offset + 1, "'" + key + "' expects true or false");
  }

  Vec3d vec3(std::string_view value, std::size_t value_begin, const std::string& key) const {
    const auto toks = exactly(value, value_begin, 3, key);
    return Vec3d(number(toks[0]), number(toks[1]), number(toks[2]));
  }

  Vec5d vec5(std::string_view value, std::size_t value_begin, const std::string& key) const {
    const auto toks = exactly(value, value_begin, 5, key);
    Vec5d v;
    for (int i = 0; i < 5; ++i) {
      v[i] = number(toks[static_cast<std::size_t>(i)]);
    }
    return v;
  }

  /// Either `diag(a, b, c)` or nine row-major numbers.
  Mat3d mat3(std::string_view value, std::size_t value_begin, const std::string& key) const {
    std::string_view trimmed = value;
    while (!trimmed.empty() && (trimmed.back() == ' ' || trimmed.back() == '\t')) {
      trimmed.remove_suffix(1);
    }
    if (trimmed.starts_with("diag(")) {
      if (!trimmed.ends_with(")")) {
        fail(value_begin + trimmed.size(), "missing ')' in diag(...)");
      }
      std::string inner(trimmed.substr(5, trimmed.size() - 6));
      for (char& c : inner) {
        if (c == ',') c = ' ';
      }
      const auto toks = exactly(inner, value_begin + 5, 3, key);
      return Vec3d(number(toks[0]), number(toks[1]), number(toks[2])).asDiagonal();
    }
    const auto toks = exactly(value, value_begin, 9, key);
    Mat3d m;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        m(r, c) = number(toks[static_cast<std::size_t>(3 * r + c)]);
      }
    }
    return m;
  }

  void dispatch(const std::string& key, std::string_view value, std::size_t vb) {
    if (section_ == "scenario") {
      if (key == "name") config_.name = std::string(value);
      else if (key == "dt") config_.dt = scalar(value, vb, key);
      else if (key == "duration") config_.duration = scalar(value, vb, key);
      else unknown_key(key);
    } else if (section_ == "phases") {
      if (key.size() != 1 || key[0] < 'a' || key[0] > 'f') {
        unknown_key(key);
      }
      const auto toks = exactly(value, vb, 2, key);
      auto& phase = config_.phases.phases[static_cast<std::size_t>(key[0] - 'a')];
      phase.label = key[0];
      phase.start = number(toks[0]);
      phase.end = number(toks[1]);
      phase_seen_[static_cast<std::size_t>(key[0] - 'a')] = true;
    } else if (section_ == "telefunctioning") {
      if (key == "upsilon") config_.upsilon = mat3(value, vb, key);
      else if (key == "omega") config_.omega = mat3(value, vb, key);
      else if (key == "position_delay") config_.position_delay = scalar(value, vb, key);
      else if (key == "force_delay") config_.force_delay = scalar(value, vb, key);
      else unknown_key(key);
    } else if (section_ == "platform") {
      if (key == "mode") {
        const auto toks = exactly(value, vb, 1, key);
        if (toks[0].text == "ideal") config_.platform_mode = PlatformMode::Ideal;
        else if (toks[0].text == "hardware") config_.platform_mode = PlatformMode::Hardware;
        else fail(toks[0].offset + 1, "'mode' expects ideal or hardware");
      } else if (key == "inertia_comp_gain") {
        config_.inertia_comp_gain = scalar(value, vb, key);
      } else if (key == "foot_stiffness") {
        config_.foot_stiffness = vec5(value, vb, key);
      } else if (key == "foot_damping") {
        config_.foot_damping = vec5(value, vb, key);
      } else {
        unknown_key(key);
      }
    } else if (section_ == "arm") {
      if (key == "mass") config_.arm.mass = scalar(value, vb, key);
      else if (key == "rotational_inertia") config_.arm.rotational_inertia = scalar(value, vb, key);
      else if (key == "gravity") config_.arm.gravity = vec3(value, vb, key);
      else if (key == "lambda") {
        const auto toks = exactly(value, vb, 3, key);
        config_.damping.lambda1 = number(toks[0]);
        config_.damping.lambda2 = number(toks[1]);
        config_.damping.lambda3 = number(toks[2]);
      } else if (key == "orientation_kp") config_.orientation_kp = scalar(value, vb, key);
      else if (key == "orientation_kd") config_.orientation_kd = scalar(value, vb, key);
      else unknown_key(key);
    } else if (section_ == "object") {
      if (key == "present") config_.object_present = boolean(value, vb, key);
      else if (key == "center") config_.object.center = vec3(value, vb, key);
      else if (key == "half_extents") config_.object.half_extents = vec3(value, vb, key);
      else if (key == "wall_stiffness") config_.object.wall_stiffness = scalar(value, vb, key);
      else if (key == "wall_damping") config_.object.wall_damping = scalar(value, vb, key);
      else if (key == "mass") config_.object.mass = scalar(value, vb, key);
      else if (key == "friction") config_.object_friction = scalar(value, vb, key);
      else unknown_key(key);
    } else if (section_ == "disturbance") {
      if (key == "phase") {
        const auto toks = exactly(value, vb, 1, key);
        if (toks[0].text.size() != 1 || toks[0].text[0] < 'a' || toks[0].text[0] > 'f') {
          fail(toks[0].offset + 1, "'phase' expects a label a..f");
        }
        config_.disturbance.phase = toks[0].text[0];
      } else if (key == "count") {
        const double v = scalar(value, vb, key);
        if (v != std::floor(v) || v < 0) fail(vb + 1, "'count' expects a non-negative integer");
        config_.disturbance.count = static_cast<int>(v);
      } else if (key == "force") config_.disturbance.force = vec3(value, vb, key);
      else if (key == "duration") config_.disturbance.duration = scalar(value, vb, key);
      else if (key == "offset") config_.disturbance.offset = scalar(value, vb, key);
      else if (key == "interval") config_.disturbance.interval = scalar(value, vb, key);
      else unknown_key(key);
    } else if (section_ == "left" || section_ == "right") {
      SideConfig& side = section_ == "left" ? config_.left : config_.right;
      if (key == "mirror") side.mirror = boolean(value, vb, key);
      else if (key == "arm_base") side.arm_base = vec3(value, vb, key);
      else if (key == "arm_orientation") side.arm_orientation_target = mat3(value, vb, key);
      else unknown_key(key);
    } else if (section_ == "trajectory.left" || section_ == "trajectory.right") {
      if (key != "knot") {
        unknown_key(key);
      }
      const auto toks = exactly(value, vb, 6, key);
      TrajectoryKnot knot;
      knot.t = number(toks[0]);
      for (int i = 0; i < 5; ++i) {
        knot.q[i] = number(toks[static_cast<std::size_t>(i + 1)]);
      }
      auto& knots = section_ == "trajectory.left" ? left_knots_ : right_knots_;
      if (!knots.empty() && !(knot.t > knots.back().t)) {
        fail(toks[0].offset + 1, "knot times must be strictly increasing");
      }
      knots.push_back(knot);
    }
  }

  [[noreturn]] void unknown_key(const std::string& key) const {
    fail(1, "unknown key '" + key + "' in section [" + section_ + "]");
  }

  void finish() {
    if (phases_line_ > 0) {
      for (std::size_t i = 0; i < phase_seen_.size(); ++i) {
        if (!phase_seen_[i]) {
          throw ParseError(origin_, phases_line_, 1,
                           std::string("[phases] is missing label '") +
                               static_cast<char>('a' + i) + "'");
        }
      }
      // Structural phase errors are reported against the section header.
      try {
        config_.phases.validate(config_.duration);
      } catch (const std::domain_error& e) {
        throw ParseError(origin_, phases_line_, 1, e.what());
      }
    }
    if (!left_knots_.empty()) {
      config_.left.foot_trajectory = JointTrajectory(std::move(left_knots_));
    }
    if (!right_knots_.empty()) {
      config_.right.foot_trajectory = JointTrajectory(std::move(right_knots_));
    }
  }

  const std::string& text_;
  std::string origin_;
  ScenarioConfig config_;
  std::string section_;
  std::string line_;
  std::size_t line_no_ = 0;
  std::size_t phases_line_ = 0;
  std::array<bool, 6> phase_seen_{};
  std::vector<TrajectoryKnot> left_knots_;
  std::vector<TrajectoryKnot> right_knots_;
};

}  // namespace

ScenarioConfig parse_scenario_text(const std::string& text, const std::string& origin) {
  Parser parser(text, origin);
  return parser.run();
}

ScenarioConfig parse_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(path, 0, 0, "cannot open scenario file");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_text(buffer.str(), path);
}

}  // namespace teleped
