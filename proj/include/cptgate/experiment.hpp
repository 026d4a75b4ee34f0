#pragma once

// Named sweep scenarios, their configuration and table emission.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cptgate/dynamics.hpp"
#include "cptgate/metrics.hpp"
#include "cptgate/model.hpp"
#include "cptgate/pulses.hpp"

namespace cptgate {

enum class Scenario {
  kBaselineFig2,
  kExactFig4,
  kExactImprovementFig5,
  kDragFig7,
  kDragImprovementFig8,
  kDecayFig9,
  kCrosstalkFig10,
  kCrosstalkCorrectedFig11,
  kPopulationsFig12,
};

std::string_view to_string(Scenario s);
Scenario parse_scenario(std::string_view name);
const std::vector<Scenario>& all_scenarios();
std::string_view describe(Scenario s);

struct CouplingSpec {
  CouplingMode mode = CouplingMode::kIndependent;
  double eta = 0.0;
  double lambda0 = 0.0;
  double lambda1 = 0.0;

  static CouplingSpec dependent(double eta);
  static CouplingSpec independent(double lambda0, double lambda1);
};

/// A strategy as written in a config. "corrected" resolves to exact for
/// dependent couplings and drag for independent ones.
enum class StrategyChoice { kUncorrected, kExact, kDrag, kCorrected };

StrategyChoice parse_strategy_choice(std::string_view name);
Strategy resolve(StrategyChoice choice, CouplingMode mode);

/// Environment variable capping the sweep worker count.
inline constexpr const char* kWorkersEnv = "CPTGATE_WORKERS";

struct SweepConfig {
  Scenario scenario = Scenario::kBaselineFig2;
  double eps_meV = 0.08;
  std::vector<double> sigma_over_eps;
  std::vector<CouplingSpec> couplings;
  std::vector<StrategyChoice> strategies;
  std::vector<double> gamma_over_eps{0.0};
  std::vector<double> omega_s_over_eps{0.0};
  std::vector<double> phi_target_rad;
  std::size_t steps = TimeGrid::kDefaultSteps;
  std::size_t history_stride = TimeGrid::kDefaultHistoryStride;
  double rabi_scale = 1.0;
  double kappa01 = 1.0;
  double kappa10 = 1.0;
  std::string output;

  static SweepConfig defaults(Scenario s);
  /// Parses JSON text; keys not present keep the scenario defaults. Unknown
  /// keys are rejected.
  static SweepConfig from_json_text(std::string_view text);
  static SweepConfig load(const std::string& path);
  /// Throws std::invalid_argument on empty grids or non-positive ratios.
  void validate() const;
};

/// logspace(lo, hi, n): n points geometrically spaced, endpoints included.
std::vector<double> logspace(double lo, double hi, std::size_t n);
std::vector<double> linspace(double lo, double hi, std::size_t n);

struct SweepRow {
  Strategy strategy = Strategy::kUncorrected;
  double sigma_over_eps = 0.0;
  CouplingSpec coupling;
  double gamma_over_eps = 0.0;
  double omega_s_over_eps = 0.0;
  double phi_target = 0.0;
  std::optional<GateReport> report;
  std::optional<Improvement> improvement;
  std::string status = "ok";
};

struct PopulationTrace {
  Strategy strategy = Strategy::kUncorrected;
  CouplingSpec coupling;
  double sigma_over_eps = 0.0;
  std::vector<PopulationSample> samples;
  std::string status = "ok";
};

struct SweepResult {
  Scenario scenario = Scenario::kBaselineFig2;
  std::vector<SweepRow> rows;
  std::vector<PopulationTrace> traces;  // populations scenario only

  bool any_failure() const;
};

/// Physical parameters for one grid point (energies in meV).
SystemParams point_params(const SweepConfig& cfg, const CouplingSpec& coupling,
                          double sigma_over_eps, double gamma_over_eps, double omega_s_over_eps);

/// Propagates one gate and scores it. Chooses the cross-talk Hamiltonian when
/// omega_s > 0 and the Lindblad flow when gamma > 0.
GateReport simulate_gate(const SystemParams& params, const PulsePlan& plan, std::size_t steps);

/// Worker count from kWorkersEnv, else hardware concurrency; at least 1.
std::size_t default_workers();

SweepResult run_scenario(const SweepConfig& cfg, std::size_t workers = default_workers());

/// Gate table: header plus one row per grid point and strategy.
std::string to_csv(const SweepResult& result);
/// Population table for the populations scenario.
std::string populations_csv(const SweepResult& result);

/// Single-point report as pretty-printed JSON, including the resolved plan.
std::string gate_report_json(const SystemParams& params, Strategy strategy, double phi_target,
                             std::size_t steps = TimeGrid::kDefaultSteps, double rabi_scale = 1.0);

}  // namespace cptgate
