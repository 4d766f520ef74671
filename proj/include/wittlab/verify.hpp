#pragma once

// Named verification suites. Each suite enumerates (or samples, with a fixed
// seed) a desk-scale parameter space and records one result per property.
// A failing property keeps the first witness found, with its inputs.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wittlab/family.hpp"

namespace wittlab {

struct PropertyResult {
  std::string name;
  bool passed = true;
  std::uint64_t checked = 0;
  nlohmann::json witness;  // null when passed
};

struct VerifyReport {
  std::string suite;
  nlohmann::json params = nlohmann::json::object();
  std::vector<PropertyResult> properties;
  std::vector<std::string> table;
  double seconds = 0;

  bool passed() const;
  /// Without `seconds` the JSON is identical across runs.
  nlohmann::json to_json(bool with_time = true) const;
  std::string format() const;
};

/// Empty lists and zero values select the suite defaults.
struct VerifyOptions {
  std::vector<std::string> specs;
  std::vector<std::string> exts;
  std::vector<std::string> instances;
  int n = 0;
  int m = 0;
  int e = 2;
  int s_max = 4;
  int samples = 0;
  std::uint64_t seed = 1;
  FamilyCache* cache = nullptr;
};

std::vector<std::string> suite_names();

/// Throws InputError for an unknown suite or unusable parameters.
VerifyReport run_suite(const std::string& suite, const VerifyOptions& opts);

}  // namespace wittlab
