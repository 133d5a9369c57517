#include "tlpulse/pulses.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tlpulse/errors.hpp"

namespace tlpulse {

namespace {

struct KindName {
  PulseKind kind;
  std::string_view name;
};

constexpr std::array<KindName, 6> kKindNames = {{
    {PulseKind::kGaussian, "gaussian"},
    {PulseKind::kHyperbolicSecant, "sech"},
    {PulseKind::kRectangular, "rect"},
    {PulseKind::kSymmetricExponential, "sym-exp"},
    {PulseKind::kDecayingExponential, "decay-exp"},
    {PulseKind::kRisingExponential, "rising-exp"},
}};

}  // namespace

std::string_view pulse_kind_name(PulseKind kind) {
  for (const auto& entry : kKindNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "unknown";
}

std::optional<PulseKind> parse_pulse_kind(std::string_view name) {
  for (const auto& entry : kKindNames) {
    if (entry.name == name) return entry.kind;
  }
  return std::nullopt;
}

PulseShape::PulseShape(PulseKind kind, double bandwidth)
    : kind_(kind), bandwidth_(bandwidth) {
  if (!std::isfinite(bandwidth) || bandwidth <= 0.0) {
    throw InvalidArgument("pulse bandwidth must be a finite positive number, got " +
                          std::to_string(bandwidth));
  }
}

TimeWindow make_window(double start, double end) {
  if (!std::isfinite(start) || !std::isfinite(end) || !(start < end)) {
    throw InvalidArgument("time window needs finite start < end, got [" +
                          std::to_string(start) + ", " + std::to_string(end) + "]");
  }
  return {start, end};
}

double evaluate(const PulseShape& shape, double t) {
  const double w = shape.bandwidth();
  switch (shape.kind()) {
    case PulseKind::kGaussian:
      return std::pow(w * w / (2.0 * std::numbers::pi), 0.25) *
             std::exp(-w * w * t * t / 4.0);
    case PulseKind::kHyperbolicSecant:
      return std::sqrt(w / 2.0) / std::cosh(w * t);
    case PulseKind::kRectangular:
      return (t >= 0.0 && t <= 2.0 / w) ? std::sqrt(w / 2.0) : 0.0;
    case PulseKind::kSymmetricExponential:
      return std::sqrt(w) * std::exp(-w * std::abs(t));
    case PulseKind::kDecayingExponential:
      return t >= 0.0 ? std::sqrt(w) * std::exp(-w * t / 2.0) : 0.0;
    case PulseKind::kRisingExponential:
      return t <= 0.0 ? std::sqrt(w) * std::exp(w * t / 2.0) : 0.0;
  }
  return 0.0;
}

TimeWindow support_window(const PulseShape& shape, double truncation) {
  if (!(truncation > 0.0 && truncation < 1.0)) {
    throw InvalidArgument("truncation tolerance must lie in (0, 1), got " +
                          std::to_string(truncation));
  }
  const double w = shape.bandwidth();
  switch (shape.kind()) {
    case PulseKind::kGaussian: {
      // |xi|^2 is a normal density with sigma = 1/W; two-sided tail is
      // erfc(T W / sqrt 2).
      const double half = std::numbers::sqrt2 * boost::math::erfc_inv(truncation) / w;
      return {-half, half};
    }
    case PulseKind::kHyperbolicSecant: {
      // Mass outside [-T, T] is 1 - tanh(W T).
      const double half = std::atanh(1.0 - truncation) / w;
      return {-half, half};
    }
    case PulseKind::kRectangular:
      return {0.0, 2.0 / w};
    case PulseKind::kSymmetricExponential: {
      const double half = -std::log(truncation) / (2.0 * w);
      return {-half, half};
    }
    case PulseKind::kDecayingExponential:
      return {0.0, -std::log(truncation) / w};
    case PulseKind::kRisingExponential:
      return {std::log(truncation) / w, 0.0};
  }
  return {0.0, 0.0};
}

std::vector<double> discontinuities(const PulseShape& shape) {
  switch (shape.kind()) {
    case PulseKind::kGaussian:
    case PulseKind::kHyperbolicSecant:
      return {};
    case PulseKind::kRectangular:
      return {0.0, 2.0 / shape.bandwidth()};
    case PulseKind::kSymmetricExponential:
    case PulseKind::kDecayingExponential:
    case PulseKind::kRisingExponential:
      return {0.0};
  }
  return {};
}

double norm(const PulseShape& shape) {
  const TimeWindow window = support_window(shape);
  std::vector<double> nodes{window.start};
  for (double t : discontinuities(shape)) {
    if (t > window.start && t < window.end) nodes.push_back(t);
  }
  nodes.push_back(window.end);

  double total = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double a = nodes[i];
    const double b = nodes[i + 1];
    // Evaluate strictly inside each piece so edge conventions do not matter.
    auto density = [&](double t) {
      const double x = evaluate(shape, std::clamp(t, std::nextafter(a, b), std::nextafter(b, a)));
      return x * x;
    };
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        density, a, b, 15, 1e-13);
  }
  return total;
}

}  // namespace tlpulse
