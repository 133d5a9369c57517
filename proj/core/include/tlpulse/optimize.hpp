#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tlpulse/dynamics.hpp"

namespace tlpulse {

struct Peak {
  double pe = 0.0;
  double t = 0.0;
};

// Global maximum of P_e. The best sample is refined on its two neighbouring
// intervals with the cubic Hermite interpolant built from the stored
// one-sided slopes. An all-zero trajectory gives (0, first time).
Peak max_over_time(const Trajectory& trajectory);

// integrate() followed by max_over_time().
Peak peak_excitation(const PulseShape& shape, const FieldState& field,
                     const CouplingBudget& budget, const SimOptions& options = {});

// Number of local maxima of P_e(t) that stand at least `prominence` above
// the following minimum.
std::size_t count_local_maxima(const Trajectory& trajectory, double prominence = 1e-3);

struct Bracket {
  double lo = 0.1;
  double hi = 10.0;
};

struct OptimizeOptions {
  Bracket bracket{};
  // Log-spaced coarse scan before golden-section refinement.
  std::size_t grid_points = 25;
  // Golden-section stops once the bracket is this narrow (units of Gamma).
  double omega_tolerance = 0.02;
  // Coarse-grid values within this of the best are treated as tied; the
  // smallest bandwidth among them anchors the refinement.
  double tie_tolerance = 1e-4;
  SimOptions sim{};
};

struct OptimumReport {
  PulseKind kind;
  FieldState field;
  double lambda_fraction;
  double omega_opt;
  double pe_max;
  double t_max;
  // The coarse maximum sat on the bracket edge.
  bool boundary;
};

// Maximizes bandwidth -> peak P_e. Throws InvalidArgument for a bad
// bracket; integration failures propagate.
OptimumReport optimize_bandwidth(PulseKind kind, const FieldState& field,
                                 const CouplingBudget& budget,
                                 const OptimizeOptions& options = {});

struct PhotonNumberPoint {
  double mean_photons;
  double pe_max;
  double t_max;
};

// Peak P_e of a coherent pulse at fixed bandwidth for each mean photon
// number. Points are evaluated concurrently and returned in input order.
std::vector<PhotonNumberPoint> sweep_photon_number(PulseKind kind, double bandwidth,
                                                   const CouplingBudget& budget,
                                                   std::span<const double> photon_numbers,
                                                   const SimOptions& options = {});

// Optimum bandwidth and peak P_e for all six shapes, Fock then coherent
// (N = 1) per shape, in the order of kAllPulseKinds.
std::vector<OptimumReport> table_two(const CouplingBudget& budget,
                                     const OptimizeOptions& options = {});

}  // namespace tlpulse
