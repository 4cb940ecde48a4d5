#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace markovflb {

struct CheckResult {
  std::string name;
  bool pass = false;
  double margin = 0.0;  // worst slack observed (negative means violated)
  std::string detail;
};

// Randomized property suites behind the `verify` CLI subcommand. Suites:
// sandwich, cgf-bridge, interleaving, attainment, ordering,
// convergence, reproducibility; "all" runs every one.
std::vector<CheckResult> run_verification_suite(const std::string& suite, std::uint64_t seed);

std::string report_to_json(const std::vector<CheckResult>& checks);

}  // namespace markovflb
