#pragma once

#include <stdexcept>
#include <string>

namespace tlpulse {

// Raised for out-of-domain parameters (negative bandwidth, Lambda outside
// [0, 8pi/3], malformed windows, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised when the ODE integrator cannot make progress.
class IntegrationFailure : public std::runtime_error {
 public:
  IntegrationFailure(const std::string& what, double time)
      : std::runtime_error(what + " at t = " + std::to_string(time)),
        time_(time) {}

  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace tlpulse
