#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "tlpulse/geometry.hpp"
#include "tlpulse/ode.hpp"
#include "tlpulse/pulses.hpp"

namespace tlpulse {

// Quantum state of the pulse mode: exactly one photon, or a coherent state
// |alpha> with mean photon number N = |alpha|^2 (alpha taken real, >= 0).
class FieldState {
 public:
  static FieldState fock() { return FieldState(Kind::kFockOne, 1.0); }
  // Throws InvalidArgument for negative or non-finite N.
  static FieldState coherent(double mean_photons);

  bool is_fock() const noexcept { return kind_ == Kind::kFockOne; }
  bool is_coherent() const noexcept { return kind_ == Kind::kCoherent; }
  // 1 for the Fock state.
  double mean_photons() const noexcept { return mean_photons_; }

 private:
  enum class Kind { kFockOne, kCoherent };
  FieldState(Kind kind, double n) : kind_(kind), mean_photons_(n) {}

  Kind kind_;
  double mean_photons_;
};

// s1 = <sigma_z>; s2, s3 are the sigma_+ / sigma_- entries. For the Fock
// case these are the off-diagonal matrix elements between the one- and
// zero-photon sectors.
struct StateVector {
  double s1 = -1.0;
  std::complex<double> s2{};
  std::complex<double> s3{};

  double excitation() const noexcept { return 0.5 * (s1 + 1.0); }

  static constexpr StateVector ground() { return {}; }
};

// Effective coupling sqrt(gamma_p) xi(t), times sqrt(N) for a coherent pulse.
std::complex<double> drive(const PulseShape& shape, const FieldState& field,
                           const CouplingBudget& budget, double t);

// Right-hand sides M s + b for a given instantaneous coupling g.
StateVector rhs_fock(const StateVector& s, std::complex<double> g, double gamma);
StateVector rhs_coherent(const StateVector& s, std::complex<double> g, double gamma);

struct SimOptions {
  // |xi|^2 mass dropped outside the drive window.
  double truncation = kDefaultTruncation;
  // Free-decay time appended after the drive window, units 1/Gamma.
  double tail = 10.0;
  ode::Tolerance tolerance{};
  // Output grid spacing; widened if the window would need more than
  // max_samples points.
  double sample_spacing = 0.01;
  std::size_t max_samples = 200'000;
};

inline constexpr double kMinTail = 10.0;

// Everything integrate() needs. The drive is switched off outside
// drive_window; the state then decays freely until window.end.
struct SimInput {
  PulseShape shape;
  FieldState field;
  CouplingBudget budget;
  TimeWindow drive_window;
  TimeWindow window;
  ode::Tolerance tolerance{};
  double sample_spacing = 0.01;
  std::size_t max_samples = 200'000;
};

// Drive window from support_window(shape, truncation), window extended by
// the tail. Throws InvalidArgument on bad options.
SimInput make_sim_input(const PulseShape& shape, const FieldState& field,
                        const CouplingBudget& budget, const SimOptions& options = {});

// Throws InvalidArgument if the input breaks one of its invariants (tail
// shorter than 10/Gamma, drive window outside the window, tolerance <= 0).
void validate(const SimInput& input);

// Samples of the solution. Times are strictly increasing. slope_left and
// slope_right are the one-sided derivatives of pe; they differ only where
// the drive jumps.
struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> pe;
  std::vector<double> slope_left;
  std::vector<double> slope_right;
  // Largest sample and its time.
  double pe_max = 0.0;
  double t_max = 0.0;

  std::size_t size() const noexcept { return times.size(); }
};

// Integrates from the ground state at window.start. Pieces between drive
// discontinuities are integrated separately so no step straddles a jump.
// Throws IntegrationFailure with the failing time.
Trajectory integrate(const SimInput& input);

// P_e(t) for a one-photon pulse from the closed-form solution of the Fock
// system,
//   P_e(t) = gamma_p [ int_{t0}^{t} xi(t') exp(-gamma (t - t') / 2) dt' ]^2,
// with xi restricted to input.drive_window and t0 = input.window.start, by
// adaptive Gauss-Kronrod quadrature. Independent of the ODE path.
// Throws InvalidArgument for a coherent field.
double fock_oracle(const SimInput& input, double t);

// The same at each of the sorted times, carrying the amplitude from one
// time to the next. Throws InvalidArgument for unsorted times.
std::vector<double> fock_oracle(const SimInput& input, std::span<const double> times);

// Same, with the default drive window of the shape.
double fock_oracle(const PulseShape& shape, const CouplingBudget& budget, double t);

}  // namespace tlpulse
