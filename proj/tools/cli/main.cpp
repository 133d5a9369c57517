#include <iostream>

#include "commands.hpp"
#include "config.hpp"

int main(int argc, char** argv) {
  const auto parsed = tlpulse::cli::parse_args(argc, argv);
  if (!parsed.config) {
    (parsed.exit_code == 0 ? std::cout : std::cerr) << parsed.message;
    return parsed.exit_code;
  }
  return tlpulse::cli::run(*parsed.config, std::cout, std::cerr);
}
