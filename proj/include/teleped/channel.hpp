#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace teleped {

/// Converts a transmission delay to a whole number of simulation steps
/// (nearest-integer quantization).
inline int delay_steps(double delay_seconds, double dt) {
  if (!(dt > 0)) {
    throw std::domain_error("delay_steps: dt must be positive");
  }
  if (!(delay_seconds >= 0)) {
    throw std::domain_error("delay_steps: delay must be non-negative");
  }
  return static_cast<int>(std::lround(delay_seconds / dt));
}

/// Fixed-latency FIFO: push the sample produced this step, receive the one
/// produced `steps` steps ago.  Warm-up slots hold the initial value, so the
/// receiving side sees a consistent signal from the first step.
template <typename T>
class DelayLine {
 public:
  DelayLine(int steps, const T& initial) {
    if (steps < 0) {
      throw std::domain_error("DelayLine: steps must be non-negative");
    }
    slots_.assign(static_cast<std::size_t>(steps), initial);
  }

  T push(const T& value) {
    if (slots_.empty()) {
      return value;
    }
    T out = slots_[head_];
    slots_[head_] = value;
    head_ = (head_ + 1) % slots_.size();
    return out;
  }

  int steps() const { return static_cast<int>(slots_.size()); }

 private:
  std::vector<T> slots_;
  std::size_t head_ = 0;
};

/// Sends one sample through the channel, returning what arrives this step.
template <typename T>
T channel_transmit(const T& value, DelayLine<T>& line) {
  return line.push(value);
}

}  // namespace teleped
