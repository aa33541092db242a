#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nchydro {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;  // empty on success
};

struct CheckReport {
  std::string suite;
  bool passed = true;
  std::vector<CheckResult> results;

  std::string render(bool quiet) const;
};

// Named deterministic property suites; `size` scales trial counts.
// Suites: algebra, semicircular, roundtrip, leray, lemma1, euler,
// vorticity-transport, exact-sequence, trace-oracle, all.
CheckReport run_check_suite(const std::string& suite, std::uint64_t seed, int size);

std::vector<std::string> check_suite_names();

}  // namespace nchydro
