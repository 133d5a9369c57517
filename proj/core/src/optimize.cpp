#include "tlpulse/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "tlpulse/errors.hpp"

namespace tlpulse {

namespace {

// Maximum of the cubic Hermite interpolant on [t0, t1].
Peak hermite_max(double t0, double t1, double p0, double p1, double m0, double m1) {
  Peak best = p0 >= p1 ? Peak{p0, t0} : Peak{p1, t1};
  const double h = t1 - t0;
  if (!(h > 0.0)) return best;

  const auto value = [&](double s) {
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2 * s3 - 3 * s2 + 1) * p0 + (s3 - 2 * s2 + s) * h * m0 +
           (-2 * s3 + 3 * s2) * p1 + (s3 - s2) * h * m1;
  };
  // d/ds of the interpolant: a s^2 + b s + c.
  const double a = 6 * p0 + 3 * h * m0 - 6 * p1 + 3 * h * m1;
  const double b = -6 * p0 - 4 * h * m0 + 6 * p1 - 2 * h * m1;
  const double c = h * m0;

  std::vector<double> roots;
  if (std::abs(a) < 1e-300) {
    if (b != 0.0) roots.push_back(-c / b);
  } else {
    const double disc = b * b - 4 * a * c;
    if (disc >= 0.0) {
      const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
      if (q != 0.0) roots.push_back(c / q);
      roots.push_back(q / a);
    }
  }
  for (double s : roots) {
    if (s > 0.0 && s < 1.0) {
      const double v = value(s);
      if (v > best.pe) best = {v, t0 + s * h};
    }
  }
  return best;
}

struct Sample {
  double omega;
  Peak peak;
};

// Maximizes f on [lo, hi] by golden-section search; every evaluation is
// appended to `seen`.
template <class F>
void golden_section(F&& f, double lo, double hi, double tolerance, std::vector<Sample>& seen) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  Peak f1 = f(x1);
  Peak f2 = f(x2);
  seen.push_back({x1, f1});
  seen.push_back({x2, f2});
  while (hi - lo > tolerance) {
    if (f1.pe >= f2.pe) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
      seen.push_back({x1, f1});
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
      seen.push_back({x2, f2});
    }
  }
}

}  // namespace

Peak max_over_time(const Trajectory& trajectory) {
  const auto& pe = trajectory.pe;
  if (pe.empty()) return {};
  const auto i = static_cast<std::size_t>(std::max_element(pe.begin(), pe.end()) - pe.begin());
  Peak best{pe[i], trajectory.times[i]};
  const auto consider = [&](std::size_t k) {
    const Peak p = hermite_max(trajectory.times[k], trajectory.times[k + 1], pe[k], pe[k + 1],
                               trajectory.slope_right[k], trajectory.slope_left[k + 1]);
    if (p.pe > best.pe) best = p;
  };
  if (i > 0) consider(i - 1);
  if (i + 1 < pe.size()) consider(i);
  return best;
}

Peak peak_excitation(const PulseShape& shape, const FieldState& field,
                     const CouplingBudget& budget, const SimOptions& options) {
  return max_over_time(integrate(make_sim_input(shape, field, budget, options)));
}

std::size_t count_local_maxima(const Trajectory& trajectory, double prominence) {
  std::size_t count = 0;
  if (trajectory.pe.empty()) return count;
  bool rising = true;
  double extreme = trajectory.pe.front();
  for (double v : trajectory.pe) {
    if (rising) {
      if (v > extreme) {
        extreme = v;
      } else if (extreme - v >= prominence) {
        ++count;
        rising = false;
        extreme = v;
      }
    } else {
      if (v < extreme) {
        extreme = v;
      } else if (v - extreme >= prominence) {
        rising = true;
        extreme = v;
      }
    }
  }
  return count;
}

OptimumReport optimize_bandwidth(PulseKind kind, const FieldState& field,
                                 const CouplingBudget& budget,
                                 const OptimizeOptions& options) {
  const Bracket br = options.bracket;
  if (!(br.lo > 0.0 && br.lo < br.hi) || !std::isfinite(br.hi)) {
    throw InvalidArgument("bandwidth bracket needs 0 < lo < hi, got [" +
                          std::to_string(br.lo) + ", " + std::to_string(br.hi) + "]");
  }
  if (options.grid_points < 3) throw InvalidArgument("coarse scan needs at least 3 points");
  if (!(options.omega_tolerance > 0.0)) throw InvalidArgument("omega tolerance must be > 0");

  const auto evaluate_at = [&](double omega) {
    return peak_excitation(PulseShape(kind, omega), field, budget, options.sim);
  };

  const std::size_t n = options.grid_points;
  std::vector<Sample> grid(n);
  const double log_lo = std::log(br.lo);
  const double log_step = (std::log(br.hi) - log_lo) / static_cast<double>(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    grid[k].omega = k + 1 == n ? br.hi : (k == 0 ? br.lo : std::exp(log_lo + log_step * static_cast<double>(k)));
    grid[k].peak = evaluate_at(grid[k].omega);
  }

  const auto best_it = std::max_element(grid.begin(), grid.end(), [](const Sample& a, const Sample& b) {
    return a.peak.pe < b.peak.pe;
  });
  const auto j = static_cast<std::size_t>(best_it - grid.begin());
  std::size_t i = 0;
  while (grid[i].peak.pe < best_it->peak.pe - options.tie_tolerance) ++i;

  const double lo = grid[i == 0 ? 0 : i - 1].omega;
  const double hi = grid[std::min(j + 1, n - 1)].omega;
  std::vector<Sample> seen(grid.begin(), grid.end());
  golden_section(evaluate_at, lo, hi, options.omega_tolerance, seen);

  // Best value wins; exact ties go to the smaller bandwidth.
  const Sample* best = &seen.front();
  for (const auto& s : seen) {
    if (s.peak.pe > best->peak.pe || (s.peak.pe == best->peak.pe && s.omega < best->omega)) {
      best = &s;
    }
  }

  return OptimumReport{
      .kind = kind,
      .field = field,
      .lambda_fraction = budget.fraction(),
      .omega_opt = best->omega,
      .pe_max = best->peak.pe,
      .t_max = best->peak.t,
      .boundary = i == 0 || j + 1 == n,
  };
}

std::vector<PhotonNumberPoint> sweep_photon_number(PulseKind kind, double bandwidth,
                                                   const CouplingBudget& budget,
                                                   std::span<const double> photon_numbers,
                                                   const SimOptions& options) {
  if (photon_numbers.empty()) throw InvalidArgument("photon-number list is empty");
  const PulseShape shape(kind, bandwidth);
  std::vector<FieldState> fields;
  fields.reserve(photon_numbers.size());
  for (double n : photon_numbers) fields.push_back(FieldState::coherent(n));

  std::vector<std::future<Peak>> jobs;
  jobs.reserve(fields.size());
  for (const auto& field : fields) {
    jobs.push_back(std::async(std::launch::async, [&shape, field, &budget, &options] {
      return peak_excitation(shape, field, budget, options);
    }));
  }
  std::vector<PhotonNumberPoint> points;
  points.reserve(jobs.size());
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const Peak p = jobs[k].get();
    points.push_back({photon_numbers[k], p.pe, p.t});
  }
  return points;
}

std::vector<OptimumReport> table_two(const CouplingBudget& budget,
                                     const OptimizeOptions& options) {
  std::vector<std::future<OptimumReport>> jobs;
  for (PulseKind kind : kAllPulseKinds) {
    for (const FieldState& field : {FieldState::fock(), FieldState::coherent(1.0)}) {
      jobs.push_back(std::async(std::launch::async, [kind, field, &budget, &options] {
        return optimize_bandwidth(kind, field, budget, options);
      }));
    }
  }
  std::vector<OptimumReport> rows;
  rows.reserve(jobs.size());
  for (auto& job : jobs) rows.push_back(job.get());
  return rows;
}

}  // namespace tlpulse
