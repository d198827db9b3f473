#pragma once

#include "hausdorff/config.hpp"
#include "hausdorff/report.hpp"

namespace hausdorff {

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<double> rel_tol;
  std::optional<double> p;  // scenario exponent override
};

struct RunResult {
  enum class Kind { norm, divergence, apply_table };
  Kind kind = Kind::norm;
  NormReport norm;
  DivergenceReport divergence;
  std::string scenario;
  std::vector<std::pair<double, double>> samples;  // apply: (x, Hf(x))
  std::string report_text;
  int exit_code = 0;
};

std::vector<std::pair<std::string, std::string>> list_scenarios();

/// Theoretical bound only.
RunResult run_bound(const ScenarioConfig& c, const RunOverrides& o = {});
/// Bound, empirical lower bound, and the dominance verdict.
RunResult run_verify(const ScenarioConfig& c, const RunOverrides& o = {});
/// Samples (H f)(x) over a grid for a function given as an expression in x.
RunResult run_apply(const ScenarioConfig& c, const std::string& f_expr,
                    const std::vector<double>& grid, const RunOverrides& o = {});
/// Built-in scenarios: cesaro, discrete-hausdorff, cyclic-group,
/// two-variable-demo, p-lt-1-divergence.
RunResult run_scenario(const std::string& name, const RunOverrides& o = {});

/// Config used by the cesaro / cyclic-group / two-variable-demo scenarios
/// (exposed so tests and docs can reproduce them through the config path).
ScenarioConfig cesaro_config(double p);
ScenarioConfig cyclic_group_config(double p);
ScenarioConfig two_variable_demo_config();

/// The discrete Hausdorff scenario data: phi(k) = 2^{-|k|} and
/// A_k = 2^k I_2 for k in [-3, 3].
void discrete_hausdorff_data(std::vector<double>& phi, std::vector<SmallMatrix>& matrices,
                             std::vector<long>& index);

/// Geometric-ray discretization of the plane used as the empirical side of
/// the discrete Hausdorff scenario: `levels` radial octaves per ray.
OperatorInstance discrete_hausdorff_grid_instance(int levels, int rays, double p);

/// The Cesaro-on-(0,1) instance of the divergence scenario.
OperatorInstance divergence_instance();

}  // namespace hausdorff
