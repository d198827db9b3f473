#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hausdorff/estimator.hpp"

namespace hausdorff {

/// Declarative description of one measure space.
struct SpaceConfig {
  std::string carrier = "interval";  // interval | box | index | group
  double lo = 0.0, hi = 1.0;
  bool open = false;
  std::vector<double> box_lo, box_hi;
  std::vector<long> indices;
  std::vector<double> weights;  // weighted counting
  int order = 0;                // group
  std::string measure = "lebesgue";  // lebesgue | counting | weighted_counting | haar

  bool operator==(const SpaceConfig&) const = default;
};

struct FamilyConfig {
  std::string kind = "scalar_dilation";  // scalar_dilation | matrix_dilation | cyclic_automorphism
  int dim = 1;
  std::vector<long> omega_index;
  std::vector<std::vector<double>> matrices;  // row-major d*d blocks
  std::vector<long> multipliers;

  bool operator==(const FamilyConfig&) const = default;
};

struct KernelConfig {
  std::string expr;             // expression in u and x
  std::string builtin;          // named built-in, bypasses the grammar
  std::vector<double> values;   // per-omega-atom table (one-variable)
  bool one_variable = false;
  bool nonnegative = false;

  bool operator==(const KernelConfig&) const = default;
};

struct EstimatorConfig {
  std::vector<std::string> families;  // truncated_power | step_function | gaussian_bump | grid_vector
  int budget = 200;
  std::uint64_t seed = 0;
  double alpha_min = 0.0, alpha_max = 0.45;
  double support_hi_min = 1.0, support_hi_max = 1.0;
  std::vector<double> alpha_sweep;
  int node_budget = 1024;  // estimator-side quadrature override

  bool operator==(const EstimatorConfig&) const = default;
};

struct ScenarioConfig {
  int schema_version = 1;
  std::string name;
  SpaceConfig omega, source, target;
  FamilyConfig family;
  KernelConfig kernel;
  double p = 2.0, q = 2.0;
  QuadratureSpec quadrature;
  EstimatorConfig estimator;

  bool operator==(const ScenarioConfig& o) const;
};

/// Parses the flat key-value config format ("key = value" lines under
/// [section] headers, '#' comments, "inf" for infinity). Throws
/// config_invalid with a line diagnostic.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config_file(const std::string& path);

/// Canonical serialization; parse(serialize(c)) == c.
std::string serialize_config(const ScenarioConfig& c);

/// Materializes the configured operator instance (spaces, family, kernel,
/// exponents). Throws config_invalid on unresolved names.
OperatorInstance build_instance(const ScenarioConfig& c);

/// Builds the estimator families described by the config for `op`.
std::vector<TestFamily> build_families(const ScenarioConfig& c, const OperatorInstance& op);

MeasureSpace build_space(const SpaceConfig& s);

}  // namespace hausdorff
