#include "tlpulse/dynamics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "tlpulse/errors.hpp"

namespace tlpulse {

namespace {

using Packed = ode::State<5>;

// The integrated variable is u = s1 + 1 = 2 P_e rather than s1, so error
// control stays relative to the excitation even when it is tiny.
Packed pack(const StateVector& s) {
  return {s.s1 + 1.0, s.s2.real(), s.s2.imag(), s.s3.real(), s.s3.imag()};
}

StateVector unpack(const Packed& y) {
  return {y[0] - 1.0, {y[1], y[2]}, {y[3], y[4]}};
}

// d/dt of the packed state. Same equations as rhs_fock / rhs_coherent with
// s1 = u - 1 substituted so that the constant terms cancel exactly.
Packed packed_rhs(const Packed& y, double g, double gamma, bool fock) {
  const double u = y[0];
  const std::complex<double> s2{y[1], y[2]};
  const std::complex<double> s3{y[3], y[4]};
  const double du = -gamma * u - 2.0 * g * (s2 + s3).real();
  std::complex<double> d2;
  std::complex<double> d3;
  if (fock) {
    d2 = -0.5 * gamma * s2 - g;
    d3 = -0.5 * gamma * s3 - g;
  } else {
    d2 = g * (u - 1.0) - 0.5 * gamma * s2;
    d3 = g * (u - 1.0) - 0.5 * gamma * s3;
  }
  return {du, d2.real(), d2.imag(), d3.real(), d3.imag()};
}

// xi on the open piece (a, b): endpoints take the limit from inside.
double envelope_on_piece(const PulseShape& shape, double t, double a, double b) {
  const double lo = std::nextafter(a, b);
  const double hi = std::nextafter(b, a);
  if (lo > hi) return evaluate(shape, 0.5 * (a + b));
  return evaluate(shape, std::clamp(t, lo, hi));
}

// Sorted breakpoints of the integration: window edges, drive edges and the
// shape's own discontinuities inside the drive window.
std::vector<double> piece_nodes(const SimInput& input) {
  std::vector<double> nodes{input.window.start, input.drive_window.start,
                            input.drive_window.end, input.window.end};
  for (double t : discontinuities(input.shape)) {
    if (t > input.drive_window.start && t < input.drive_window.end) nodes.push_back(t);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  nodes.erase(std::remove_if(nodes.begin(), nodes.end(),
                             [&](double t) {
                               return t < input.window.start || t > input.window.end;
                             }),
              nodes.end());
  return nodes;
}

}  // namespace

FieldState FieldState::coherent(double mean_photons) {
  if (!std::isfinite(mean_photons) || mean_photons < 0.0) {
    throw InvalidArgument("mean photon number must be finite and >= 0, got " +
                          std::to_string(mean_photons));
  }
  return FieldState(Kind::kCoherent, mean_photons);
}

std::complex<double> drive(const PulseShape& shape, const FieldState& field,
                           const CouplingBudget& budget, double t) {
  const double amplitude = field.is_fock() ? 1.0 : std::sqrt(field.mean_photons());
  return amplitude * std::sqrt(budget.gamma_p()) * evaluate(shape, t);
}

StateVector rhs_fock(const StateVector& s, std::complex<double> g, double gamma) {
  StateVector d;
  d.s1 = (-gamma * s.s1 - 2.0 * g * s.s2 - 2.0 * std::conj(g) * s.s3).real() - gamma;
  d.s2 = -0.5 * gamma * s.s2 - std::conj(g);
  d.s3 = -0.5 * gamma * s.s3 - g;
  return d;
}

StateVector rhs_coherent(const StateVector& s, std::complex<double> g, double gamma) {
  StateVector d;
  d.s1 = (-gamma * s.s1 - 2.0 * g * s.s2 - 2.0 * std::conj(g) * s.s3).real() - gamma;
  d.s2 = std::conj(g) * s.s1 - 0.5 * gamma * s.s2;
  d.s3 = g * s.s1 - 0.5 * gamma * s.s3;
  return d;
}

SimInput make_sim_input(const PulseShape& shape, const FieldState& field,
                        const CouplingBudget& budget, const SimOptions& options) {
  const TimeWindow drive_window = support_window(shape, options.truncation);
  SimInput input{
      .shape = shape,
      .field = field,
      .budget = budget,
      .drive_window = drive_window,
      .window = {drive_window.start, drive_window.end + options.tail / budget.gamma()},
      .tolerance = options.tolerance,
      .sample_spacing = options.sample_spacing,
      .max_samples = options.max_samples,
  };
  validate(input);
  return input;
}

void validate(const SimInput& input) {
  const double gamma = input.budget.gamma();
  if (!(input.window.start < input.window.end) ||
      !(input.drive_window.start < input.drive_window.end)) {
    throw InvalidArgument("empty time window");
  }
  if (input.drive_window.start < input.window.start ||
      input.drive_window.end > input.window.end) {
    throw InvalidArgument("drive window must lie inside the integration window");
  }
  if (input.window.end - input.drive_window.end < kMinTail / gamma * (1.0 - 1e-12)) {
    throw InvalidArgument("decay tail after the pulse must be at least 10/Gamma");
  }
  if (!(input.tolerance.relative > 0.0) || !(input.tolerance.absolute > 0.0)) {
    throw InvalidArgument("integration tolerances must be positive");
  }
  if (!(input.sample_spacing > 0.0) || input.max_samples < 2) {
    throw InvalidArgument("sample spacing must be positive and max_samples >= 2");
  }
}

Trajectory integrate(const SimInput& input) {
  validate(input);

  const double gamma = input.budget.gamma();
  const double amplitude =
      std::sqrt(input.budget.gamma_p()) *
      (input.field.is_fock() ? 1.0 : std::sqrt(input.field.mean_photons()));
  const bool fock = input.field.is_fock();

  const double spacing =
      std::max(input.sample_spacing,
               input.window.length() / static_cast<double>(input.max_samples - 1));

  Trajectory traj;
  const auto reserve = static_cast<std::size_t>(input.window.length() / spacing) + 16;
  traj.times.reserve(reserve);
  traj.states.reserve(reserve);
  traj.pe.reserve(reserve);
  traj.slope_left.reserve(reserve);
  traj.slope_right.reserve(reserve);

  const auto nodes = piece_nodes(input);
  Packed state = pack(StateVector::ground());

  for (std::size_t p = 0; p + 1 < nodes.size(); ++p) {
    const double a = nodes[p];
    const double b = nodes[p + 1];
    const bool driven = amplitude > 0.0 && input.drive_window.contains(0.5 * (a + b));
    const auto coupling = [&](double t) {
      return driven ? amplitude * envelope_on_piece(input.shape, t, a, b) : 0.0;
    };
    const auto rhs = [&](double t, const Packed& y) {
      return packed_rhs(y, coupling(t), gamma, fock);
    };

    const double start_slope = 0.5 * rhs(a, state)[0];
    if (traj.times.empty()) {
      traj.times.push_back(a);
      traj.states.push_back(unpack(state));
      traj.pe.push_back(0.5 * state[0]);
      traj.slope_left.push_back(start_slope);
      traj.slope_right.push_back(start_slope);
    }
    traj.slope_right.back() = start_slope;

    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / spacing)));
    std::size_t next = 1;
    const auto sample_time = [&](std::size_t k) {
      return k == n ? b : a + (b - a) * static_cast<double>(k) / static_cast<double>(n);
    };

    const auto observer = [&](const ode::DenseStep<5>& step) {
      const bool last = std::abs(step.t_end() - b) <= 1e-12 * std::max(1.0, std::abs(b));
      const double reach = last ? b : step.t_end();
      while (next <= n && sample_time(next) <= reach) {
        const double t = sample_time(next);
        const Packed y = next == n && last ? step.y_end() : step.at(t);
        const double slope = 0.5 * rhs(t, y)[0];
        traj.times.push_back(t);
        traj.states.push_back(unpack(y));
        traj.pe.push_back(0.5 * y[0]);
        traj.slope_left.push_back(slope);
        traj.slope_right.push_back(slope);
        ++next;
      }
    };

    // Undriven pieces decay exponentially toward zero; a fixed absolute floor
    // would lose relative accuracy in the tail, so scale it to the state.
    ode::Tolerance tol = input.tolerance;
    if (!driven) {
      double size = 0.0;
      for (double v : state) size = std::max(size, std::abs(v));
      if (size > 0.0) tol.absolute *= std::min(1.0, size);
    }
    state = ode::DormandPrince<5>(tol).integrate(rhs, a, b, state, observer);
    if (next <= n) {
      throw IntegrationFailure("integrator stopped before the end of the piece", b);
    }
  }

  const auto peak = std::max_element(traj.pe.begin(), traj.pe.end());
  traj.pe_max = *peak;
  traj.t_max = traj.times[static_cast<std::size_t>(peak - traj.pe.begin())];
  return traj;
}

namespace {

// int_a^b xi(u) exp(-gamma (t - u) / 2) du with xi restricted to the drive
// window, split at the discontinuities of the shape.
double decayed_overlap(const SimInput& input, double a, double b, double t) {
  const double lo = std::max(a, input.drive_window.start);
  const double hi = std::min(b, input.drive_window.end);
  if (!(hi > lo)) return 0.0;

  std::vector<double> nodes{lo};
  for (double d : discontinuities(input.shape)) {
    if (d > lo && d < hi) nodes.push_back(d);
  }
  nodes.push_back(hi);

  const double gamma = input.budget.gamma();
  // Fixed-order panels no wider than half the fastest time scale; the
  // integrand is smooth on each piece, so no adaptivity is needed.
  const double panel = 0.5 / std::max(input.shape.bandwidth(), gamma);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const double na = nodes[i];
    const double nb = nodes[i + 1];
    auto integrand = [&](double u) {
      return envelope_on_piece(input.shape, u, na, nb) * std::exp(-0.5 * gamma * (t - u));
    };
    const auto panels = static_cast<std::size_t>(std::ceil((nb - na) / panel));
    for (std::size_t k = 0; k < panels; ++k) {
      const double pa = na + (nb - na) * static_cast<double>(k) / static_cast<double>(panels);
      const double pb = k + 1 == panels
                            ? nb
                            : na + (nb - na) * static_cast<double>(k + 1) / static_cast<double>(panels);
      sum += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, pa, pb, 0);
    }
  }
  return sum;
}

void require_fock(const SimInput& input) {
  if (!input.field.is_fock()) {
    throw InvalidArgument("the closed-form oracle only covers the one-photon Fock state");
  }
}

}  // namespace

double fock_oracle(const SimInput& input, double t) {
  require_fock(input);
  const double gp = input.budget.gamma_p();
  if (gp == 0.0 || !(t > input.window.start)) return 0.0;
  const double amplitude = decayed_overlap(input, input.window.start, t, t);
  return gp * amplitude * amplitude;
}

std::vector<double> fock_oracle(const SimInput& input, std::span<const double> times) {
  require_fock(input);
  if (!std::is_sorted(times.begin(), times.end())) {
    throw InvalidArgument("oracle times must be sorted");
  }
  const double gamma = input.budget.gamma();
  const double gp = input.budget.gamma_p();
  std::vector<double> out;
  out.reserve(times.size());
  // The amplitude at t_k is the amplitude at t_{k-1}, decayed, plus the
  // overlap over [t_{k-1}, t_k]; each short interval converges at once.
  double amplitude = 0.0;
  double last = input.window.start;
  for (double t : times) {
    if (t > last) {
      amplitude = amplitude * std::exp(-0.5 * gamma * (t - last)) + decayed_overlap(input, last, t, t);
      last = t;
    }
    out.push_back(t > input.window.start ? gp * amplitude * amplitude : 0.0);
  }
  return out;
}

double fock_oracle(const PulseShape& shape, const CouplingBudget& budget, double t) {
  return fock_oracle(make_sim_input(shape, FieldState::fock(), budget), t);
}

}  // namespace tlpulse
