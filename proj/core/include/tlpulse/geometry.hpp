#pragma once

#include <numbers>
#include <variant>

namespace tlpulse {

// Lambda for a pulse that covers the whole dipole pattern.
inline constexpr double kFullSolidAngle = 8.0 * std::numbers::pi / 3.0;

struct FullSolidAngle {};

// Cone of half-angle `half_angle` (radians, in (0, pi]) around a linear
// dipole's axis, e.g. a deep parabolic mirror.
struct Cone {
  double half_angle;
};

// Lambda given directly, e.g. taken from a focusing-strength calculation.
struct ExplicitLambda {
  double lambda;
};

using FocusingGeometry = std::variant<FullSolidAngle, Cone, ExplicitLambda>;

// Dipole-pattern-weighted solid angle covered by the pulse mode. For a cone
// this is the integral of sin^2(theta) over the cone,
//   2 pi (2/3 - cos(t0) + cos^3(t0) / 3).
// Throws InvalidArgument for a half-angle outside (0, pi] or Lambda outside
// [0, 8pi/3].
double lambda_of(const FocusingGeometry& geometry);

// Decay rate into the pulse mode, gamma * lambda / (8pi/3).
double gamma_p(double gamma, double lambda);

// Rates in units where the total decay rate is the time unit. The split
// gamma = gamma' + gamma_p has gamma' = gamma - gamma_p.
class CouplingBudget {
 public:
  static CouplingBudget from_lambda(double lambda, double gamma = 1.0);
  static CouplingBudget from_geometry(const FocusingGeometry& geometry,
                                      double gamma = 1.0);
  // gamma_p / gamma in [0, 1].
  static CouplingBudget from_fraction(double fraction, double gamma = 1.0);

  double gamma() const noexcept { return gamma_; }
  double lambda() const noexcept { return lambda_; }
  double gamma_p() const noexcept { return gamma_p_; }
  double gamma_env() const noexcept { return gamma_ - gamma_p_; }
  double fraction() const noexcept { return lambda_ / kFullSolidAngle; }

 private:
  CouplingBudget(double gamma, double lambda);

  double gamma_;
  double lambda_;
  double gamma_p_;
};

}  // namespace tlpulse
