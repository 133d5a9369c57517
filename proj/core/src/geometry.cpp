#include "tlpulse/geometry.hpp"

#include <cmath>
#include <string>

#include "tlpulse/errors.hpp"

namespace tlpulse {

namespace {

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= kFullSolidAngle)) {
    throw InvalidArgument("weighted solid angle must lie in [0, 8pi/3], got " +
                          std::to_string(lambda));
  }
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

double lambda_of(const FocusingGeometry& geometry) {
  return std::visit(
      Overloaded{
          [](FullSolidAngle) { return kFullSolidAngle; },
          [](Cone cone) {
            const double t0 = cone.half_angle;
            if (!(t0 > 0.0 && t0 <= std::numbers::pi)) {
              throw InvalidArgument("cone half-angle must lie in (0, pi], got " +
                                    std::to_string(t0));
            }
            // At t0 = pi the bracket is exactly 4/3.
            if (t0 == std::numbers::pi) return kFullSolidAngle;
            const double c = std::cos(t0);
            return 2.0 * std::numbers::pi * (2.0 / 3.0 - c + c * c * c / 3.0);
          },
          [](ExplicitLambda explicit_lambda) {
            check_lambda(explicit_lambda.lambda);
            return explicit_lambda.lambda;
          },
      },
      geometry);
}

double gamma_p(double gamma, double lambda) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("total decay rate must be positive, got " + std::to_string(gamma));
  }
  check_lambda(lambda);
  if (lambda == kFullSolidAngle) return gamma;
  return gamma * lambda / kFullSolidAngle;
}

CouplingBudget::CouplingBudget(double gamma, double lambda)
    : gamma_(gamma), lambda_(lambda), gamma_p_(tlpulse::gamma_p(gamma, lambda)) {}

CouplingBudget CouplingBudget::from_lambda(double lambda, double gamma) {
  return CouplingBudget(gamma, lambda);
}

CouplingBudget CouplingBudget::from_geometry(const FocusingGeometry& geometry,
                                             double gamma) {
  return CouplingBudget(gamma, lambda_of(geometry));
}

CouplingBudget CouplingBudget::from_fraction(double fraction, double gamma) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw InvalidArgument("Lambda fraction must lie in [0, 1], got " +
                          std::to_string(fraction));
  }
  if (fraction == 1.0) return CouplingBudget(gamma, kFullSolidAngle);
  return CouplingBudget(gamma, fraction * kFullSolidAngle);
}

}  // namespace tlpulse
