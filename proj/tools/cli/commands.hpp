#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"

namespace tlpulse::cli {

// Runs the command and returns the output document (CSV or JSON). Library
// errors propagate: InvalidArgument, IntegrationFailure.
std::string render(const RunConfig& config, std::ostream& warnings);

// render() plus delivery to --out or `out`. Returns the process exit code:
// 0 ok, 1 numerical or I/O failure, 2 invalid configuration.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace tlpulse::cli
