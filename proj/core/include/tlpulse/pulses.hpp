#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace tlpulse {

// Temporal envelopes of the incoming wave packet. All are real, non-negative
// and unit-normalized in |xi|^2.
enum class PulseKind {
  kGaussian,
  kHyperbolicSecant,
  kRectangular,
  kSymmetricExponential,
  kDecayingExponential,
  kRisingExponential,
};

inline constexpr std::array<PulseKind, 6> kAllPulseKinds = {
    PulseKind::kGaussian,           PulseKind::kHyperbolicSecant,
    PulseKind::kRectangular,        PulseKind::kSymmetricExponential,
    PulseKind::kDecayingExponential, PulseKind::kRisingExponential,
};

// Short command-line names: gaussian, sech, rect, sym-exp, decay-exp, rising-exp.
std::string_view pulse_kind_name(PulseKind kind);
std::optional<PulseKind> parse_pulse_kind(std::string_view name);

// Envelope kind plus bandwidth. The bandwidth is the rate parameter that
// appears in the envelope formula (units of Gamma), not a FWHM: e.g. the
// Gaussian is (W^2/2pi)^(1/4) exp(-W^2 t^2 / 4), the rectangle lasts 2/W.
//
// Time origin is fixed per kind: symmetric shapes are centered at t = 0,
// the rectangle and the decaying exponential start at t = 0, and the rising
// exponential ends at t = 0.
class PulseShape {
 public:
  // Throws InvalidArgument unless bandwidth is finite and > 0.
  PulseShape(PulseKind kind, double bandwidth);

  PulseKind kind() const noexcept { return kind_; }
  double bandwidth() const noexcept { return bandwidth_; }

  friend bool operator==(const PulseShape&, const PulseShape&) = default;

 private:
  PulseKind kind_;
  double bandwidth_;
};

struct TimeWindow {
  double start = 0.0;
  double end = 0.0;

  double length() const noexcept { return end - start; }
  bool contains(double t) const noexcept { return t >= start && t <= end; }
};

// Throws InvalidArgument unless start < end and both are finite.
TimeWindow make_window(double start, double end);

inline constexpr double kDefaultTruncation = 1e-8;

// xi(t). Total on the real line; one-sided kinds include their edge t = 0 in
// the support so that evaluate() there returns the limit from inside.
double evaluate(const PulseShape& shape, double t);

// Window holding at least 1 - truncation of the |xi|^2 mass. Hard edges of
// one-sided and compact shapes are reproduced exactly.
// Throws InvalidArgument unless 0 < truncation < 1.
TimeWindow support_window(const PulseShape& shape,
                          double truncation = kDefaultTruncation);

// Points where xi or its derivative is discontinuous (hard edges and the cusp
// of the symmetric exponential). Sorted ascending.
std::vector<double> discontinuities(const PulseShape& shape);

// Quadrature of |xi|^2 over support_window(shape). Meant for checks.
double norm(const PulseShape& shape);

}  // namespace tlpulse
