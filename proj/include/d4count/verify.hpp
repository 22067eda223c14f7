#pragma once

// Self-checks run by `d4count verify`.

#include <cstdint>
#include <string>
#include <vector>

#include "d4count/intkit.hpp"

namespace d4count {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  i64 B = 200;  // bijection range 1..B
  std::uint64_t seed = 1;
  unsigned random_cases = 1000;
  std::uint64_t mc_samples = 1'000'000;
};

std::vector<CheckResult> verify_geometry(const VerifyOptions& opt);
std::vector<CheckResult> verify_bijection(const VerifyOptions& opt);
std::vector<CheckResult> verify_densities(const VerifyOptions& opt);
std::vector<CheckResult> verify_archimedean(const VerifyOptions& opt);

/// suite is one of all, bijection, densities, archimedean, geometry; throws std::invalid_argument otherwise.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& opt);

}  // namespace d4count
