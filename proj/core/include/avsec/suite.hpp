#pragma once

#include "avsec/checks.hpp"

namespace avsec {

/// Declarative description of a full verification run. Bodies are JSON
/// templates; entries without a "dim" field are instantiated once per
/// requested dimension.
struct SuiteConfig {
  std::vector<nlohmann::json> bodies;
  std::vector<int> dims = {3, 4, 5, 6};
  std::vector<int> ks = {1, 2};
  std::vector<int> rs = {1, 2};
  CheckBudgets budgets;
  std::uint64_t seed = 1;
  bool include_rotations = true;  // add one random-rotation image per body
  std::vector<std::string> checks;  // empty = whole registry
  int jobs = 0;                     // worker threads; 0 = hardware concurrency

  static SuiteConfig default_config();
  static SuiteConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct SuiteResult {
  std::vector<CheckReport> reports;
  int passes = 0;
  int failures = 0;
  int indeterminates = 0;
  int exact_failures = 0;  // failures among the exact registry (drive exit status)

  /// One CheckReport JSON object per line, registry order.
  std::string json_lines() const;
  std::string csv() const;
};

/// Runs every registered check applicable to each instantiated body.
/// Report order is fixed by the job list, never by completion order, and the
/// whole result is a deterministic function of (config, seed) at any jobs
/// count.
SuiteResult run_suite(const SuiteConfig& config);

/// Body templates the CLI knows by name (ball, cube, cross, simplex, ...).
nlohmann::json named_body_template(const std::string& name);
std::vector<std::string> known_body_names();

/// Builds a body from a template, filling in a missing "dim" and resolving
/// the parameter-free ellipsoid template to diag(1..n) with determinant one.
Body instantiate_body(const nlohmann::json& tmpl, int dim);

}  // namespace avsec
