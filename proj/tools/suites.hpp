#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hyp3term/ladder.hpp"

namespace hyp3term::cli {

struct RunConfig {
  std::uint64_t seed = 1;
  int samples = 10;
  int precision = 50;
  std::string shift_set = "default10";
  bool strict_tables = false;
};

/// default10 is the symmetry sweep sample; default20 adds ten more shifts.
std::vector<ShiftTriple> shift_set(std::string_view name);

inline const std::vector<std::string> kSuites = {"ladder", "symQ", "symR", "numeric", "tables", "all"};

struct SuiteResult {
  nlohmann::json report;
  bool pass = false;
};

/// Runs one suite (or all of them). Cases fan out over worker threads; the
/// report lists them in a fixed order, so it depends only on the config.
SuiteResult run_suite(std::string_view suite, const RunConfig& config);

}  // namespace hyp3term::cli
