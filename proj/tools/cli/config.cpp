#include "config.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string_view>

#include "format.hpp"
#include "tlpulse/errors.hpp"

namespace tlpulse::cli {

namespace {

std::optional<double> to_double(std::string_view text) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

// Validators run on the raw text so they can quote the bad value; CLI11
// prefixes the message with the flag name.
CLI::Validator number_in(double lo, double hi, bool lo_open, bool hi_open, std::string what) {
  return CLI::Validator(
      [=](std::string& text) -> std::string {
        const auto v = to_double(text);
        if (!v) return "expected a finite number, got '" + text + "'";
        const bool below = lo_open ? !(*v > lo) : !(*v >= lo);
        const bool above = hi_open ? !(*v < hi) : !(*v <= hi);
        if (below || above) return "must be " + what + ", got " + text;
        return {};
      },
      what);
}

constexpr double kInf = std::numeric_limits<double>::infinity();

CLI::Validator positive() { return number_in(0.0, kInf, true, true, "a number > 0"); }

CLI::Validator shape_name() {
  return CLI::Validator(
      [](std::string& text) -> std::string {
        if (parse_pulse_kind(text)) return {};
        return "must be one of gaussian, sech, rect, sym-exp, decay-exp, rising-exp; got '" +
               text + "'";
      },
      "SHAPE");
}

struct Raw {
  std::string shape;
  double bandwidth = 1.0;
  std::string state = "fock";
  std::vector<double> n;
  std::string lambda;
  double lambda_frac = 1.0;
  double cone_deg = 180.0;
  bool full = false;
  double tol = ode::Tolerance{}.relative;
  double spacing = SimOptions{}.sample_spacing;
  double omega_min = Bracket{}.lo;
  double omega_max = Bracket{}.hi;
  std::string out;
  bool json = false;
};

struct Flags {
  CLI::Option* n = nullptr;
  CLI::Option* lambda = nullptr;
  CLI::Option* lambda_frac = nullptr;
  CLI::Option* cone_deg = nullptr;
  CLI::Option* full = nullptr;
  CLI::Option* out = nullptr;
};

void add_lambda(CLI::App& app, Raw& raw, Flags& f) {
  f.lambda = app.add_option("--lambda", raw.lambda, "Couple the whole dipole pattern (only 'full')")
                 ->check(CLI::IsMember({"full"}));
  f.lambda_frac = app.add_option("--lambda-frac", raw.lambda_frac,
                                 "Coupled fraction of the dipole pattern, Lambda / (8 pi / 3)")
                      ->check(number_in(0.0, 1.0, false, false, "in [0, 1]"));
  f.cone_deg = app.add_option("--cone-deg", raw.cone_deg, "Half-angle of a focusing cone in degrees")
                   ->check(number_in(0.0, 180.0, true, false, "in (0, 180]"));
  f.lambda_frac->excludes(f.lambda);
  f.cone_deg->excludes(f.lambda);
  f.cone_deg->excludes(f.lambda_frac);
}

void add_output(CLI::App& app, Raw& raw, Flags& f) {
  f.out = app.add_option("--out", raw.out, "Write to this file instead of stdout");
  app.add_flag("--json", raw.json, "Emit one JSON document instead of CSV");
}

void add_tolerance(CLI::App& app, Raw& raw) {
  app.add_option("--tol", raw.tol, "Relative integration tolerance")
      ->check(number_in(1e-14, 1e-2, false, false, "in [1e-14, 1e-2]"));
}

void add_field(CLI::App& app, Raw& raw, Flags& f) {
  app.add_option("--state", raw.state, "Field state of the pulse")->check(CLI::IsMember({"fock", "coherent"}));
  f.n = app.add_option("--n", raw.n, "Mean photon number of a coherent pulse (default 1)")
            ->expected(1)
            ->check(number_in(0.0, kInf, false, true, "a number >= 0"));
}

}  // namespace

const char* command_name(Command command) {
  switch (command) {
    case Command::kSimulate: return "simulate";
    case Command::kOptimize: return "optimize";
    case Command::kTable2: return "table2";
    case Command::kSweep: return "sweep";
    case Command::kLambda: return "lambda";
  }
  return "?";
}

ParseResult parse_args(int argc, const char* const* argv) {
  CLI::App app{"Peak excitation of a two-level atom driven by a shaped one-photon or coherent pulse.\n"
               "Rates are in units of the atom's total decay rate Gamma, times in 1/Gamma."};
  app.name("tlpulse");
  app.require_subcommand(1);

  Raw raw;
  Flags f;

  auto* simulate = app.add_subcommand("simulate", "Integrate one pulse and write P_e(t) and the state");
  simulate->add_option("--shape", raw.shape, "Pulse envelope")->required()->check(shape_name());
  simulate->add_option("--bandwidth", raw.bandwidth, "Bandwidth Omega in units of Gamma")
      ->required()
      ->check(positive());
  Flags fs;
  add_field(*simulate, raw, fs);
  add_lambda(*simulate, raw, fs);
  add_tolerance(*simulate, raw);
  simulate->add_option("--spacing", raw.spacing, "Output sample spacing in 1/Gamma")
      ->check(positive());
  add_output(*simulate, raw, fs);

  auto* optimize = app.add_subcommand("optimize", "Find the bandwidth that maximizes peak P_e");
  optimize->add_option("--shape", raw.shape, "Pulse envelope")->required()->check(shape_name());
  Flags fo;
  add_field(*optimize, raw, fo);
  add_lambda(*optimize, raw, fo);
  add_tolerance(*optimize, raw);
  optimize->add_option("--omega-min", raw.omega_min, "Lower end of the bandwidth search")
      ->check(positive());
  optimize->add_option("--omega-max", raw.omega_max, "Upper end of the bandwidth search")
      ->check(positive());
  add_output(*optimize, raw, fo);

  auto* table2 = app.add_subcommand("table2", "Optimum bandwidth and peak P_e for all shapes, Fock and N = 1");
  Flags ft;
  add_lambda(*table2, raw, ft);
  add_tolerance(*table2, raw);
  add_output(*table2, raw, ft);

  auto* sweep = app.add_subcommand("sweep", "Peak P_e of a coherent pulse against mean photon number");
  sweep->add_option("--shape", raw.shape, "Pulse envelope")->required()->check(shape_name());
  sweep->add_option("--bandwidth", raw.bandwidth, "Bandwidth Omega in units of Gamma")
      ->required()
      ->check(positive());
  Flags fw;
  fw.n = sweep->add_option("--n", raw.n, "Comma-separated mean photon numbers")
             ->delimiter(',')
             ->check(number_in(0.0, kInf, false, true, "a number >= 0"));
  add_lambda(*sweep, raw, fw);
  add_tolerance(*sweep, raw);
  add_output(*sweep, raw, fw);

  auto* lambda = app.add_subcommand("lambda", "Lambda and Gamma_p for a focusing specification");
  Flags fl;
  add_lambda(*lambda, raw, fl);
  fl.full = lambda->add_flag("--full", raw.full, "Same as --lambda full");
  fl.full->excludes(fl.lambda_frac);
  fl.full->excludes(fl.cone_deg);
  add_output(*lambda, raw, fl);

  ParseResult result;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream err;
    result.exit_code = app.exit(e, out, err) == 0 ? 0 : 2;
    result.message = out.str() + err.str();
    return result;
  }

  RunConfig cfg;
  if (simulate->parsed()) {
    cfg.command = Command::kSimulate;
    f = fs;
  } else if (optimize->parsed()) {
    cfg.command = Command::kOptimize;
    f = fo;
  } else if (table2->parsed()) {
    cfg.command = Command::kTable2;
    f = ft;
  } else if (sweep->parsed()) {
    cfg.command = Command::kSweep;
    f = fw;
  } else {
    cfg.command = Command::kLambda;
    f = fl;
  }

  const auto usage = [&](const std::string& msg) {
    result.exit_code = 2;
    result.message = std::string(command_name(cfg.command)) + ": " + msg + "\nRun with --help for more information.\n";
    return result;
  };

  if (!raw.shape.empty()) cfg.shape = *parse_pulse_kind(raw.shape);
  cfg.bandwidth = raw.bandwidth;
  cfg.tolerance = raw.tol;
  cfg.sample_spacing = raw.spacing;
  cfg.format = raw.json ? OutputFormat::kJson : OutputFormat::kCsv;
  if (f.out->count() > 0) {
    if (raw.out.empty()) return usage("--out needs a non-empty path");
    cfg.out = raw.out;
  }

  if (f.lambda_frac->count() > 0) {
    cfg.lambda = LambdaFraction{raw.lambda_frac};
  } else if (f.cone_deg->count() > 0) {
    cfg.lambda = LambdaConeDegrees{raw.cone_deg};
  } else {
    cfg.lambda = LambdaFull{};
  }

  if (cfg.command == Command::kSimulate || cfg.command == Command::kOptimize) {
    if (raw.state == "coherent") {
      cfg.field = FieldState::coherent(raw.n.empty() ? 1.0 : raw.n.front());
    } else if (f.n->count() > 0) {
      return usage("--n only applies to --state coherent");
    }
  }

  if (cfg.command == Command::kOptimize) {
    if (!(raw.omega_min < raw.omega_max)) {
      return usage("--omega-min must be below --omega-max");
    }
    cfg.bracket = {raw.omega_min, raw.omega_max};
  }

  if (cfg.command == Command::kSweep) {
    cfg.photon_numbers = f.n->count() > 0 ? raw.n : std::vector<double>{1, 2, 5, 10, 20, 50, 100};
    if (cfg.photon_numbers.empty()) return usage("--n needs at least one photon number");
  }

  result.config = cfg;
  return result;
}

FocusingGeometry geometry_of(const LambdaSpec& spec) {
  if (const auto* frac = std::get_if<LambdaFraction>(&spec)) {
    return ExplicitLambda{frac->fraction * kFullSolidAngle};
  }
  if (const auto* cone = std::get_if<LambdaConeDegrees>(&spec)) {
    // 180 degrees maps to pi exactly so the full pattern comes out exact.
    return Cone{cone->degrees == 180.0 ? std::numbers::pi : cone->degrees * std::numbers::pi / 180.0};
  }
  return FullSolidAngle{};
}

CouplingBudget budget_of(const LambdaSpec& spec) {
  if (const auto* frac = std::get_if<LambdaFraction>(&spec)) {
    return CouplingBudget::from_fraction(frac->fraction);
  }
  return CouplingBudget::from_geometry(geometry_of(spec));
}

std::string describe(const LambdaSpec& spec) {
  if (const auto* frac = std::get_if<LambdaFraction>(&spec)) return "fraction " + format_number(frac->fraction);
  if (const auto* cone = std::get_if<LambdaConeDegrees>(&spec)) {
    return "cone " + format_number(cone->degrees) + " deg";
  }
  return "full";
}

SimOptions sim_options(const RunConfig& config) {
  SimOptions opts;
  const ode::Tolerance defaults{};
  opts.tolerance.relative = config.tolerance;
  opts.tolerance.absolute = config.tolerance * (defaults.absolute / defaults.relative);
  opts.sample_spacing = config.sample_spacing;
  return opts;
}

}  // namespace tlpulse::cli
