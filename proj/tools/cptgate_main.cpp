// cptgate: sweep scenarios, single-point gate reports, scenario listing.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cptgate/experiment.hpp"

namespace {

using namespace cptgate;

int write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return 1;
  }
  out << text;
  return out ? 0 : 1;
}

std::string populations_path(const std::string& csv_path) {
  const auto dot = csv_path.rfind('.');
  const std::string stem = dot == std::string::npos ? csv_path : csv_path.substr(0, dot);
  return stem + "_populations.csv";
}

int run_simulate(const std::string& config_path, const std::string& output_override, bool strict) {
  const SweepConfig cfg = SweepConfig::load(config_path);
  const SweepResult result = run_scenario(cfg);
  const std::string path = output_override.empty() ? cfg.output : output_override;
  if (int rc = write_file(path, to_csv(result))) return rc;
  std::cerr << "wrote " << result.rows.size() << " rows to " << path << '\n';
  if (!result.traces.empty()) {
    const std::string pop = populations_path(path);
    if (int rc = write_file(pop, populations_csv(result))) return rc;
    std::cerr << "wrote population histories to " << pop << '\n';
  }
  if (result.any_failure()) {
    std::cerr << "warning: some rows have a failure status\n";
    if (strict) return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulse design and simulation for four-level Lambda-system gates"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  bool strict = false;
  auto* simulate = app.add_subcommand("simulate", "run a sweep scenario from a JSON config");
  simulate->add_option("config", config_path, "config file")->required()->check(CLI::ExistingFile);
  simulate->add_option("-o,--output", output, "CSV path (overrides the config's output)");
  simulate->add_flag("--strict", strict, "exit nonzero if any row failed");

  std::string strategy_name;
  double sigma = 0.0;
  double eps = 0.0;
  std::optional<double> lambda0;
  std::optional<double> lambda1;
  std::optional<double> eta;
  double phi = 0.0;
  double gamma = 0.0;
  double omega_s = 0.0;
  double rabi_scale = 1.0;
  std::size_t steps = TimeGrid::kDefaultSteps;
  auto* report = app.add_subcommand("report", "simulate one gate and print a JSON report");
  report->add_option("--strategy", strategy_name, "uncorrected | exact | drag")->required();
  report->add_option("--sigma", sigma, "bandwidth [meV]")->required();
  report->add_option("--eps", eps, "target-unwanted splitting [meV]")->required();
  auto* l0_opt = report->add_option("--lambda0", lambda0, "coupling ratio of |0> to |u>");
  auto* l1_opt = report->add_option("--lambda1", lambda1, "coupling ratio of |1> to |u>");
  auto* eta_opt = report->add_option("--eta", eta, "dependent couplings: lambda0 = -tan(eta), lambda1 = cot(eta)");
  eta_opt->excludes(l0_opt)->excludes(l1_opt);
  l0_opt->needs(l1_opt);
  l1_opt->needs(l0_opt);
  report->add_option("--phi", phi, "rotation angle [rad]")->required();
  report->add_option("--gamma", gamma, "decay rate [meV]");
  report->add_option("--omega-s", omega_s, "ground-state splitting [meV]");
  report->add_option("--rabi-scale", rabi_scale, "multiplier on both drive envelopes");
  report->add_option("--steps", steps, "time steps over the gate");

  auto* scenarios = app.add_subcommand("scenarios", "list built-in scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(config_path, output, strict);
    if (scenarios->parsed()) {
      for (Scenario s : all_scenarios()) std::cout << to_string(s) << "\t" << describe(s) << '\n';
      return 0;
    }
    if (report->parsed()) {
      if (!eta && !lambda0) {
        std::cerr << "error: give either --eta or both --lambda0 and --lambda1\n";
        return 1;
      }
      SystemParams params = eta ? SystemParams::dependent(eps, sigma, *eta)
                                : SystemParams::independent(eps, sigma, *lambda0, *lambda1);
      params.gamma = gamma;
      params.omega_s = omega_s;
      params.validate();
      std::cout << gate_report_json(params, parse_strategy(strategy_name), phi, steps, rabi_scale) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
