#pragma once

// Minimal property-test runner: a seeded generator feeds `cases` random
// inputs to a check that returns an empty optional on success or a
// description of the counterexample.

#include <cstdint>
#include <optional>
#include <random>
#include <string>

namespace tlpulse::testing {

struct PropertyResult {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  bool ok() const { return failures == 0 && cases > 0; }
};

template <class Check>
PropertyResult check_property(std::string name, int cases, std::uint64_t seed, Check&& check) {
  PropertyResult result{std::move(name), cases, 0, {}};
  std::mt19937_64 rng(seed);
  for (int i = 0; i < cases; ++i) {
    std::optional<std::string> failure;
    try {
      failure = check(rng);
    } catch (const std::exception& e) {
      failure = std::string("threw: ") + e.what();
    }
    if (failure) {
      if (result.failures == 0) {
        result.first_failure = "case " + std::to_string(i) + ": " + *failure;
      }
      ++result.failures;
    }
  }
  return result;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

}  // namespace tlpulse::testing
