#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tlpulse/dynamics.hpp"
#include "tlpulse/geometry.hpp"
#include "tlpulse/optimize.hpp"
#include "tlpulse/pulses.hpp"

namespace tlpulse::cli {

enum class Command { kSimulate, kOptimize, kTable2, kSweep, kLambda };

enum class OutputFormat { kCsv, kJson };

// How the coupled fraction of the dipole pattern was specified.
struct LambdaFull {};
struct LambdaFraction {
  double fraction;
};
struct LambdaConeDegrees {
  double degrees;
};
using LambdaSpec = std::variant<LambdaFull, LambdaFraction, LambdaConeDegrees>;

struct RunConfig {
  Command command = Command::kSimulate;
  PulseKind shape = PulseKind::kGaussian;
  double bandwidth = 1.0;
  FieldState field = FieldState::fock();
  LambdaSpec lambda = LambdaFull{};
  // Relative tolerance; the absolute tolerance keeps the library's ratio.
  double tolerance = ode::Tolerance{}.relative;
  double sample_spacing = SimOptions{}.sample_spacing;
  Bracket bracket{};
  // sweep only.
  std::vector<double> photon_numbers;
  std::optional<std::string> out;
  OutputFormat format = OutputFormat::kCsv;
};

// Outcome of parsing argv. Either a config to run, or a message with the
// exit code to return right away (0 for --help, 2 for usage errors).
struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = 0;
  std::string message;
};

ParseResult parse_args(int argc, const char* const* argv);

const char* command_name(Command command);

CouplingBudget budget_of(const LambdaSpec& spec);
FocusingGeometry geometry_of(const LambdaSpec& spec);
// Free-form description used in output headers: "full", "fraction 0.364",
// "cone 134 deg".
std::string describe(const LambdaSpec& spec);

SimOptions sim_options(const RunConfig& config);

}  // namespace tlpulse::cli
