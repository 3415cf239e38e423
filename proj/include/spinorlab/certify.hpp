#pragma once

// Registry of certification suites. Each suite checks one family of
// identities over a range of n with seeded random trials and, for n <= 2,
// exhaustive basis checks.

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinorlab {

struct UnknownSuite : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SuiteOptions {
  std::optional<int> n_min;
  std::optional<int> n_max;
  std::optional<int> trials;
  std::optional<int> cutoff;
  std::uint64_t seed = 7;
  std::optional<double> tolerance;
};

struct SuiteResult {
  std::string id;
  int n_min = 0;
  int n_max = 0;
  int trials = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
  bool exact = false;
  double max_residual = 0.0;
  std::size_t checks = 0;
  std::size_t failures = 0;
  bool passed = false;
  std::vector<int> failed_n;
  std::vector<std::string> notes;
  std::optional<nlohmann::json> counterexample;
};

struct SuiteInfo {
  std::string id;
  std::string description;
  int default_n_min = 1;
  int default_n_max = 1;
  int default_trials = 100;
  int default_cutoff = 0;  // 0: no cutoff parameter
  double default_tolerance = 1e-10;
  bool exact = false;
  std::function<SuiteResult(const SuiteOptions&)> run;
};

const std::vector<SuiteInfo>& suite_registry();
const SuiteInfo& find_suite(const std::string& id);  // throws UnknownSuite
SuiteResult certify(const std::string& id, const SuiteOptions& options);

}  // namespace spinorlab
