// Acceptance runner: one PASS/FAIL line per criterion, details indented
// below it. Pass criterion ids (C1 ... C9) to run a subset; the exit code is
// 0 only if every selected criterion passes.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "invariants.hpp"
#include "oracles.hpp"
#include "tlpulse/dynamics.hpp"
#include "tlpulse/geometry.hpp"
#include "tlpulse/optimize.hpp"
#include "tlpulse/pulses.hpp"

namespace {

using namespace tlpulse;

struct Outcome {
  bool pass = true;
  std::string summary;
  std::vector<std::string> details;

  void expect(bool ok, std::string line) {
    pass = pass && ok;
    details.push_back(std::string(ok ? "ok   " : "FAIL ") + line);
  }
};

struct Criterion {
  const char* id;
  const char* title;
  std::function<Outcome()> check;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const char* state_name(const FieldState& f) { return f.is_fock() ? "fock" : "coherent"; }

// Reference rows in table_two() order: per shape, Fock then coherent N = 1.
struct TableRow {
  double omega;
  double pe;
  double pe_tol;
};
const TableRow kTable[12] = {
    {1.5, 0.80, 0.01},  {2.4, 0.48, 0.01},   // gaussian
    {1.3, 0.80, 0.01},  {2.0, 0.48, 0.01},   // sech
    {0.8, 0.81, 0.01},  {1.3, 0.48, 0.01},   // rect
    {0.9, 0.79, 0.01},  {1.4, 0.48, 0.01},   // sym-exp
    {1.0, 0.54, 0.01},  {1.4, 0.37, 0.01},   // decay-exp
    {1.0, 0.995, 0.005}, {1.9, 0.56, 0.01},  // rising-exp
};

Outcome optimum_table() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rows = table_two(CouplingBudget::from_fraction(1.0));
  const double elapsed = seconds_since(t0);
  int good = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const auto& want = kTable[i];
    const bool ok = std::abs(r.omega_opt - want.omega) <= 0.1 && std::abs(r.pe_max - want.pe) <= want.pe_tol;
    good += ok;
    o.expect(ok, fmt("%-10s %-8s omega %.4f (want %.1f +- 0.1)  pe %.4f (want %.3f +- %.3f)%s",
                     std::string(pulse_kind_name(r.kind)).c_str(), state_name(r.field), r.omega_opt,
                     want.omega, r.pe_max, want.pe, want.pe_tol, r.boundary ? "  [bracket edge]" : ""));
  }
  o.expect(elapsed < 120.0, fmt("wall time %.2f s (budget 120 s)", elapsed));
  o.summary = fmt("%d/12 rows within tolerance in %.2f s", good, elapsed);
  return o;
}

struct CouplingCase {
  PulseKind kind;
  FieldState field;
  double want;
};

Outcome reduced_coupling(double fraction, const std::vector<CouplingCase>& cases) {
  Outcome o;
  const CouplingBudget budget = CouplingBudget::from_fraction(fraction);
  const CouplingBudget full = CouplingBudget::from_fraction(1.0);
  int good = 0;
  for (const auto& c : cases) {
    const OptimumReport r = optimize_bandwidth(c.kind, c.field, budget);
    const bool ok = std::abs(r.pe_max - c.want) <= 0.01;
    good += ok;
    o.expect(ok, fmt("%-10s %-8s re-optimized omega %.3f  pe %.4f (want %.2f +- 0.01)",
                     std::string(pulse_kind_name(c.kind)).c_str(), state_name(c.field), r.omega_opt, r.pe_max,
                     c.want));
    if (!ok) {
      // Diagnostic only: the same coupling at the full-coupling optimum.
      const OptimumReport ref = optimize_bandwidth(c.kind, c.field, full);
      const Peak fixed = peak_excitation(PulseShape(c.kind, ref.omega_opt), c.field, budget);
      o.details.push_back(fmt("       note: at the full-coupling optimum omega %.3f the peak is %.4f", ref.omega_opt,
                              fixed.pe));
    }
  }
  o.summary = fmt("%d/%zu within 0.01 at coupled fraction %.3f", good, cases.size(), fraction);
  return o;
}

Outcome mirror() {
  return reduced_coupling(0.94, {{PulseKind::kRisingExponential, FieldState::fock(), 0.94},
                                 {PulseKind::kRisingExponential, FieldState::coherent(1.0), 0.54},
                                 {PulseKind::kGaussian, FieldState::fock(), 0.75},
                                 {PulseKind::kGaussian, FieldState::coherent(1.0), 0.46}});
}

Outcome lens() {
  return reduced_coupling(0.364, {{PulseKind::kRisingExponential, FieldState::fock(), 0.36},
                                  {PulseKind::kRisingExponential, FieldState::coherent(1.0), 0.27},
                                  {PulseKind::kGaussian, FieldState::fock(), 0.29},
                                  {PulseKind::kGaussian, FieldState::coherent(1.0), 0.23}});
}

Outcome cone() {
  Outcome o;
  const double deg = std::numbers::pi / 180.0;
  const double f134 = lambda_of(Cone{134.0 * deg}) / kFullSolidAngle;
  const double f180 = lambda_of(Cone{std::numbers::pi}) / kFullSolidAngle;
  o.expect(std::abs(f134 - 0.94) <= 0.005, fmt("134 deg: %.6f (want 0.94 +- 0.005)", f134));
  o.expect(f180 == 1.0, fmt("180 deg: %.17g (want exactly 1)", f180));
  o.summary = fmt("134 deg -> %.5f, 180 deg -> %.17g", f134, f180);
  return o;
}

Outcome oracle_grid() {
  Outcome o;
  double worst = 0.0;
  std::size_t samples = 0;
  int good = 0;
  for (PulseKind kind : kAllPulseKinds) {
    for (double w : {0.5, 1.0, 1.5, 2.4}) {
      for (double gp : {0.364, 0.94, 1.0}) {
        const SimInput in = make_sim_input(PulseShape(kind, w), FieldState::fock(), CouplingBudget::from_fraction(gp));
        const Trajectory tr = integrate(in);
        const auto want = fock_oracle(in, tr.times);
        double err = 0.0;
        for (std::size_t i = 0; i < tr.size(); ++i) err = std::max(err, std::abs(tr.pe[i] - want[i]));
        samples += tr.size();
        worst = std::max(worst, err);
        const bool ok = err <= 1e-6;
        good += ok;
        if (!ok) {
          o.expect(false, fmt("%s omega %.1f gamma_p %.3f: max error %.3g", std::string(pulse_kind_name(kind)).c_str(),
                              w, gp, err));
        }
      }
    }
  }
  o.expect(good == 72, fmt("%d/72 cases, %zu samples, worst |pe - oracle| = %.3g (limit 1e-6)", good, samples, worst));
  o.summary = fmt("72-case grid, worst deviation %.3g", worst);
  return o;
}

Outcome closed_forms() {
  Outcome o;
  {
    const Peak p = peak_excitation(PulseShape(PulseKind::kDecayingExponential, 1.0), FieldState::fock(),
                                   CouplingBudget::from_fraction(1.0));
    const double want = 4.0 * std::exp(-2.0);
    o.expect(std::abs(p.pe - want) <= 1e-4 && std::abs(p.t - 2.0) <= 1e-3,
             fmt("decaying exp, omega = gamma = gamma_p: pe %.8f at t %.6f (want %.8f +- 1e-4 at 2 +- 1e-3)", p.pe,
                 p.t, want));
  }
  // The closed form is for the untruncated envelope; the default 1e-8 mass
  // cut shifts P_e(0) by up to ~3e-5 at large bandwidth, so cut deeper.
  SimOptions opts;
  opts.truncation = 1e-14;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> log_w(std::log(0.3), std::log(5.0));
  std::uniform_real_distribution<double> frac(0.05, 1.0);
  for (int i = 0; i < 5; ++i) {
    const double w = std::exp(log_w(rng));
    const double gp = frac(rng);
    const SimInput in = make_sim_input(PulseShape(PulseKind::kRisingExponential, w), FieldState::fock(),
                                       CouplingBudget::from_fraction(gp), opts);
    const Trajectory tr = integrate(in);
    const auto at0 = std::find(tr.times.begin(), tr.times.end(), 0.0);
    const double got = at0 == tr.times.end() ? std::nan("") : tr.pe[static_cast<std::size_t>(at0 - tr.times.begin())];
    const double want = testing::rising_exp_peak(w, gp);
    o.expect(std::abs(got - want) <= 1e-6,
             fmt("rising exp omega %.4f gamma_p %.4f: P_e(0) %.10f (want %.10f, diff %.2g)", w, gp, got, want,
                 std::abs(got - want)));
  }
  o.summary = "decaying-exp peak and five rising-exp P_e(0) values";
  return o;
}

Outcome normalization() {
  Outcome o;
  double worst = 0.0;
  for (PulseKind kind : kAllPulseKinds) {
    for (double w : {0.1, 1.0, 10.0}) {
      const double n = norm(PulseShape(kind, w));
      worst = std::max(worst, std::abs(n - 1.0));
      if (std::abs(n - 1.0) > 1e-6) {
        o.expect(false, fmt("%s omega %.1f: norm %.12f", std::string(pulse_kind_name(kind)).c_str(), w, n));
      }
    }
  }
  o.expect(worst <= 1e-6, fmt("18 shapes, worst |norm - 1| = %.3g (limit 1e-6)", worst));
  o.summary = fmt("worst |norm - 1| = %.3g", worst);
  return o;
}

Outcome coherent_figures() {
  Outcome o;
  const CouplingBudget full = CouplingBudget::from_fraction(1.0);
  const std::vector<double> ns = {1.0, 10.0, 50.0, 100.0};
  const auto pts = sweep_photon_number(PulseKind::kGaussian, 2.4, full, ns);
  o.expect(pts[0].pe_max <= pts[1].pe_max && pts[1].pe_max <= pts[2].pe_max,
           fmt("non-decreasing: N=1 %.4f, N=10 %.4f, N=50 %.4f", pts[0].pe_max, pts[1].pe_max, pts[2].pe_max));
  o.expect(pts[2].pe_max > 0.9 * pts[3].pe_max,
           fmt("saturation: N=50 %.4f > 0.9 x N=100 %.4f", pts[2].pe_max, pts[3].pe_max));
  const Trajectory tr =
      integrate(make_sim_input(PulseShape(PulseKind::kGaussian, 2.4), FieldState::coherent(50.0), full));
  const std::size_t maxima = count_local_maxima(tr);
  o.expect(maxima >= 2, fmt("N=50 trajectory has %zu local maxima (want >= 2)", maxima));
  o.summary = fmt("pe_max(N) = %.3f, %.3f, %.3f, %.3f; %zu maxima at N=50", pts[0].pe_max, pts[1].pe_max,
                  pts[2].pe_max, pts[3].pe_max, maxima);
  return o;
}

Outcome invariants() {
  Outcome o;
  int good = 0;
  const auto suites = testing::all_invariant_suites(100);
  for (const auto& r : suites) {
    good += r.ok();
    o.expect(r.ok(), fmt("%s: %d/%d cases%s%s", r.name.c_str(), r.cases - r.failures, r.cases,
                         r.ok() ? "" : "; first failure: ", r.first_failure.c_str()));
  }
  o.summary = fmt("%d/%zu suites hold over 100 random cases each", good, suites.size());
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"C1", "optimum bandwidth table, full coupling", optimum_table},
      {"C2", "parabolic mirror coupling (0.94)", mirror},
      {"C3", "high-NA lens coupling (0.364)", lens},
      {"C4", "cone solid angle", cone},
      {"C5", "integrator vs quadrature oracle", oracle_grid},
      {"C6", "closed-form spot checks", closed_forms},
      {"C7", "envelope normalization", normalization},
      {"C8", "coherent saturation and oscillation", coherent_figures},
      {"C9", "randomized invariant suites", invariants},
  };

  std::vector<std::string> wanted(argv + 1, argv + argc);
  for (const auto& w : wanted) {
    if (std::none_of(criteria.begin(), criteria.end(), [&](const Criterion& c) { return w == c.id; })) {
      std::fprintf(stderr, "unknown criterion '%s' (expected C1 ... C9)\n", w.c_str());
      return 2;
    }
  }

  int failed = 0;
  for (const auto& c : criteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.summary = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s %s  %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.summary.c_str());
    for (const auto& d : o.details) std::printf("      %s\n", d.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
