#pragma once

#include <chrono>
#include <cstdint>
#include <optional>

namespace cliffext {

/// Optional wall-clock deadline shared by the long-running searches.
class Deadline {
 public:
  Deadline() = default;
  static Deadline after_ms(std::int64_t ms) {
    Deadline d;
    if (ms > 0) d.at_ = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
    return d;
  }
  bool expired() const { return at_ && std::chrono::steady_clock::now() > *at_; }
  bool bounded() const { return at_.has_value(); }

 private:
  std::optional<std::chrono::steady_clock::time_point> at_;
};

}  // namespace cliffext
