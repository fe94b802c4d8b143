#pragma once

#include <chrono>
#include <optional>

namespace mirp {

/// Cooperative wall-clock limit. Searches poll it only between units of work
/// (beam levels, pool improvements, ILS iterations).
class Deadline {
 public:
  using Clock = std::chrono::steady_clock;

  Deadline() : start_(Clock::now()) {}
  explicit Deadline(std::optional<double> seconds) : start_(Clock::now()), limit_(seconds) {}

  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }
  bool expired() const { return limit_ && elapsed() >= *limit_; }

 private:
  Clock::time_point start_;
  std::optional<double> limit_;
};

}  // namespace mirp
