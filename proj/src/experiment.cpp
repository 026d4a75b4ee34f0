#include "cptgate/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace cptgate {

namespace {

using nlohmann::json;

constexpr double kConvergenceTolerance = 1e-8;

struct ScenarioInfo {
  Scenario scenario;
  std::string_view name;
  std::string_view description;
};

constexpr std::array<ScenarioInfo, 9> kScenarios{{
    {Scenario::kBaselineFig2, "baseline_fig2",
     "uncorrected R_X(-pi/2) error vs sigma/eps, dependent and independent couplings"},
    {Scenario::kExactFig4, "exact_fig4", "exact detuning vs uncorrected at eta = pi/4, phi = -pi/2 and -pi"},
    {Scenario::kExactImprovementFig5, "exact_improvement_fig5",
     "exact-detuning improvement over a coarse eta x sigma/eps grid"},
    {Scenario::kDragFig7, "drag_fig7", "DRAG vs uncorrected error and unitarity deviation"},
    {Scenario::kDragImprovementFig8, "drag_improvement_fig8",
     "DRAG improvement vs coupling ratio and sigma/eps"},
    {Scenario::kDecayFig9, "decay_fig9", "Lindblad spontaneous emission, exact and DRAG"},
    {Scenario::kCrosstalkFig10, "crosstalk_fig10", "improvement with cross-talk vs omega_s/eps and sigma/eps"},
    {Scenario::kCrosstalkCorrectedFig11, "crosstalk_corrected_fig11",
     "cross-talk with Rabi frequencies halved, eps >> omega_s"},
    {Scenario::kPopulationsFig12, "populations_fig12", "population histories at sigma/eps = 0.5"},
}};

const ScenarioInfo& info(Scenario s) {
  for (const ScenarioInfo& i : kScenarios)
    if (i.scenario == s) return i;
  throw std::invalid_argument("unknown scenario");
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::vector<double> parse_grid(const json& j, const char* key) {
  if (j.is_number()) return {j.get<double>()};
  if (j.is_array()) {
    std::vector<double> out;
    for (const json& v : j) {
      if (!v.is_number()) throw std::invalid_argument(std::string(key) + ": grid entries must be numbers");
      out.push_back(v.get<double>());
    }
    return out;
  }
  if (j.is_object() && j.size() == 1) {
    const auto& [kind, spec] = *j.items().begin();
    if (!spec.is_array() || spec.size() != 3) {
      throw std::invalid_argument(std::string(key) + ": expected [lo, hi, n]");
    }
    const double lo = spec[0].get<double>();
    const double hi = spec[1].get<double>();
    const auto n = spec[2].get<std::size_t>();
    if (kind == "logspace") return logspace(lo, hi, n);
    if (kind == "linspace") return linspace(lo, hi, n);
  }
  throw std::invalid_argument(std::string(key) +
                              ": expected a number, a list, or {\"logspace\"|\"linspace\": [lo, hi, n]}");
}

CouplingSpec parse_coupling(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("couplings: entries must be objects");
  if (j.contains("eta_rad")) {
    if (j.size() != 1) throw std::invalid_argument("couplings: eta_rad excludes other keys");
    return CouplingSpec::dependent(j.at("eta_rad").get<double>());
  }
  if (j.contains("lambda0") && j.contains("lambda1") && j.size() == 2) {
    return CouplingSpec::independent(j.at("lambda0").get<double>(), j.at("lambda1").get<double>());
  }
  throw std::invalid_argument("couplings: expected {\"eta_rad\": x} or {\"lambda0\": a, \"lambda1\": b}");
}

HamiltonianFn gate_hamiltonian(const SystemParams& params, const PulsePlan& plan) {
  if (params.omega_s > 0.0) {
    const Operator t = cpt_transform(plan.theta_cpt, plan.alpha_cpt);
    const Operator td = t.adjoint();
    return [params, plan, t, td](double time) {
      const Operator h = t * h_crosstalk(params, plan, time) * td;
      return (h + h.adjoint()) * Complex(0.5);
    };
  }
  return [params, plan](double time) { return h_cpt(params, plan, time); };
}

std::array<Operator, 4> qubit_matrix_units() {
  std::array<Operator, 4> units;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) units[2 * i + j] = Operator::unit(4, i, j);
  return units;
}

std::vector<Operator> cpt_jumps(const SystemParams& params, const PulsePlan& plan) {
  std::vector<Operator> jumps;
  for (const Operator& l : lindblad_generators(params.gamma))
    jumps.push_back(lab_to_cpt(l, plan.theta_cpt, plan.alpha_cpt));
  return jumps;
}

bool finite(const GateReport& r) {
  return std::isfinite(r.fidelity) && std::isfinite(r.gate_error) &&
         std::isfinite(r.unitarity_deviation) && std::isfinite(r.leakage);
}

// Runs one strategy at one grid point; failures end up in status.
SweepRow run_point(const SweepConfig& cfg, const CouplingSpec& coupling, Strategy strategy,
                   double sigma_over_eps, double gamma_over_eps, double omega_s_over_eps, double phi) {
  SweepRow row;
  row.strategy = strategy;
  row.sigma_over_eps = sigma_over_eps;
  row.coupling = coupling;
  row.gamma_over_eps = gamma_over_eps;
  row.omega_s_over_eps = omega_s_over_eps;
  row.phi_target = phi;
  try {
    const SystemParams params = point_params(cfg, coupling, sigma_over_eps, gamma_over_eps, omega_s_over_eps);
    PulsePlan plan = build_pulse_plan(params, strategy, phi);
    plan.rabi_scale = cfg.rabi_scale;
    const GateReport report = simulate_gate(params, plan, cfg.steps);
    if (finite(report)) {
      row.report = report;
    } else {
      row.status = "non_finite";
    }
  } catch (const DesignError&) {
    row.status = "design_error";
  } catch (const IntegratorError&) {
    row.status = "integrator_failure";
  } catch (const NumericsError&) {
    row.status = "numerics_error";
  } catch (const std::exception&) {
    row.status = "error";
  }
  return row;
}

PopulationTrace run_trace(const SweepConfig& cfg, const CouplingSpec& coupling, Strategy strategy,
                          double sigma_over_eps, double gamma_over_eps, double omega_s_over_eps,
                          double phi) {
  PopulationTrace trace;
  trace.strategy = strategy;
  trace.coupling = coupling;
  trace.sigma_over_eps = sigma_over_eps;
  try {
    const SystemParams params = point_params(cfg, coupling, sigma_over_eps, gamma_over_eps, omega_s_over_eps);
    PulsePlan plan = build_pulse_plan(params, strategy, phi);
    plan.rabi_scale = cfg.rabi_scale;
    const TimeGrid grid = TimeGrid::over(plan.t_g, cfg.steps).with_history(cfg.history_stride);
    const HamiltonianFn h = gate_hamiltonian(params, plan);
    // |0>_lab = (|D> + |B>) / sqrt(2) for the X-rotation transform.
    const double r = 1.0 / std::sqrt(2.0);
    const StateVector psi0{r, r, 0.0, 0.0};
    PropagationResult res;
    if (params.gamma > 0.0) {
      const std::vector<Operator> jumps = cpt_jumps(params, plan);
      res = propagate_lindblad(h, jumps, DensityMatrix::pure(psi0), grid);
    } else {
      res = propagate_unitary(h, grid, psi0);
    }
    trace.samples = population_history(res);
  } catch (const DesignError&) {
    trace.status = "design_error";
  } catch (const IntegratorError&) {
    trace.status = "integrator_failure";
  } catch (const std::exception&) {
    trace.status = "error";
  }
  return trace;
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
}

}  // namespace

std::string_view to_string(Scenario s) { return info(s).name; }

std::string_view describe(Scenario s) { return info(s).description; }

Scenario parse_scenario(std::string_view name) {
  for (const ScenarioInfo& i : kScenarios)
    if (i.name == name) return i.scenario;
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

const std::vector<Scenario>& all_scenarios() {
  static const std::vector<Scenario> all = [] {
    std::vector<Scenario> v;
    for (const ScenarioInfo& i : kScenarios) v.push_back(i.scenario);
    return v;
  }();
  return all;
}

CouplingSpec CouplingSpec::dependent(double eta) {
  const Couplings c = dependent_couplings(eta);
  return {CouplingMode::kDependent, eta, c.lambda0, c.lambda1};
}

CouplingSpec CouplingSpec::independent(double lambda0, double lambda1) {
  return {CouplingMode::kIndependent, 0.0, lambda0, lambda1};
}

StrategyChoice parse_strategy_choice(std::string_view name) {
  if (name == "corrected") return StrategyChoice::kCorrected;
  switch (parse_strategy(name)) {
    case Strategy::kUncorrected:
      return StrategyChoice::kUncorrected;
    case Strategy::kExact:
      return StrategyChoice::kExact;
    case Strategy::kDrag:
      return StrategyChoice::kDrag;
  }
  throw std::invalid_argument("unknown strategy");
}

Strategy resolve(StrategyChoice choice, CouplingMode mode) {
  switch (choice) {
    case StrategyChoice::kUncorrected:
      return Strategy::kUncorrected;
    case StrategyChoice::kExact:
      return Strategy::kExact;
    case StrategyChoice::kDrag:
      return Strategy::kDrag;
    case StrategyChoice::kCorrected:
      return mode == CouplingMode::kDependent ? Strategy::kExact : Strategy::kDrag;
  }
  return Strategy::kUncorrected;
}

std::vector<double> logspace(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && hi > 0.0) || n == 0) throw std::invalid_argument("logspace needs positive bounds and n > 0");
  if (n == 1) return {lo};
  std::vector<double> out(n);
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) throw std::invalid_argument("linspace needs n > 0");
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  out.back() = hi;
  return out;
}

SweepConfig SweepConfig::defaults(Scenario s) {
  const double pi = kPi;
  SweepConfig c;
  c.scenario = s;
  c.sigma_over_eps = logspace(1e-2, 1.0, 25);
  c.phi_target_rad = {-pi / 2};
  c.strategies = {StrategyChoice::kUncorrected, StrategyChoice::kCorrected};
  c.output = std::string(to_string(s)) + ".csv";
  switch (s) {
    case Scenario::kBaselineFig2:
      c.couplings = {CouplingSpec::dependent(pi / 4), CouplingSpec::independent(1.0, 1.0)};
      c.strategies = {StrategyChoice::kUncorrected};
      break;
    case Scenario::kExactFig4:
      c.couplings = {CouplingSpec::dependent(pi / 4)};
      c.phi_target_rad = {-pi / 2, -pi};
      break;
    case Scenario::kExactImprovementFig5:
      c.couplings.clear();
      for (double eta : linspace(pi / 12, 5 * pi / 12, 10)) c.couplings.push_back(CouplingSpec::dependent(eta));
      c.sigma_over_eps = linspace(0.1, 1.0, 10);
      c.phi_target_rad = {-pi, -pi / 2};
      break;
    case Scenario::kDragFig7:
      c.couplings = {CouplingSpec::independent(0.8, 1.2), CouplingSpec::independent(1.0, 1.0),
                     CouplingSpec::independent(1.2, 1.2)};
      c.phi_target_rad = {-pi / 2, -pi};
      break;
    case Scenario::kDragImprovementFig8:
      c.couplings.clear();
      for (double l1 : {0.5, 1.0, 1.5})
        for (double ratio : linspace(0.2, 2.0, 10)) c.couplings.push_back(CouplingSpec::independent(ratio * l1, l1));
      c.sigma_over_eps = linspace(0.1, 1.0, 10);
      break;
    case Scenario::kDecayFig9:
      c.couplings = {CouplingSpec::dependent(std::atan(1.2)), CouplingSpec::independent(1.2, 0.8)};
      c.gamma_over_eps = {2.2e-3, 7.2e-4};
      break;
    case Scenario::kCrosstalkFig10:
      c.couplings = {CouplingSpec::dependent(pi / 4), CouplingSpec::independent(1.0, 1.0)};
      c.sigma_over_eps = logspace(1e-2, 1.0, 10);
      c.omega_s_over_eps = logspace(1e-3, 1.0, 10);
      break;
    case Scenario::kCrosstalkCorrectedFig11:
      c.couplings = {CouplingSpec::dependent(pi / 4), CouplingSpec::independent(1.0, 1.0)};
      c.sigma_over_eps = logspace(1e-2, 1.0, 10);
      c.omega_s_over_eps = logspace(1e-4, 1e-2, 10);
      c.rabi_scale = 0.5;
      break;
    case Scenario::kPopulationsFig12:
      c.couplings = {CouplingSpec::dependent(pi / 4), CouplingSpec::independent(1.0, 1.0)};
      c.sigma_over_eps = {0.5};
      break;
  }
  return c;
}

SweepConfig SweepConfig::from_json_text(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("scenario")) {
    throw std::invalid_argument("config must be an object with a \"scenario\" key");
  }
  SweepConfig c = defaults(parse_scenario(j.at("scenario").get<std::string>()));
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "scenario") continue;
      if (key == "eps_meV") c.eps_meV = value.get<double>();
      else if (key == "sigma_over_eps") c.sigma_over_eps = parse_grid(value, "sigma_over_eps");
      else if (key == "gamma_over_eps") c.gamma_over_eps = parse_grid(value, "gamma_over_eps");
      else if (key == "omega_s_over_eps") c.omega_s_over_eps = parse_grid(value, "omega_s_over_eps");
      else if (key == "phi_target_rad") c.phi_target_rad = parse_grid(value, "phi_target_rad");
      else if (key == "steps") c.steps = value.get<std::size_t>();
      else if (key == "history_stride") c.history_stride = value.get<std::size_t>();
      else if (key == "rabi_scale") c.rabi_scale = value.get<double>();
      else if (key == "kappa01") c.kappa01 = value.get<double>();
      else if (key == "kappa10") c.kappa10 = value.get<double>();
      else if (key == "output") c.output = value.get<std::string>();
      else if (key == "couplings") {
        c.couplings.clear();
        for (const json& e : value) c.couplings.push_back(parse_coupling(e));
      } else if (key == "strategies") {
        c.strategies.clear();
        for (const json& e : value) c.strategies.push_back(parse_strategy_choice(e.get<std::string>()));
      } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config has a value of the wrong type: ") + e.what());
  }
  c.validate();
  return c;
}

SweepConfig SweepConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

void SweepConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("invalid sweep config: " + what);
  };
  require(eps_meV > 0.0 && std::isfinite(eps_meV), "eps_meV must be positive");
  require(!sigma_over_eps.empty(), "sigma_over_eps is empty");
  require(!couplings.empty(), "couplings is empty");
  require(!strategies.empty(), "strategies is empty");
  require(!gamma_over_eps.empty(), "gamma_over_eps is empty");
  require(!omega_s_over_eps.empty(), "omega_s_over_eps is empty");
  require(!phi_target_rad.empty(), "phi_target_rad is empty");
  for (double r : sigma_over_eps) require(r > 0.0 && std::isfinite(r), "sigma_over_eps entries must be positive");
  for (double r : gamma_over_eps) require(r >= 0.0 && std::isfinite(r), "gamma_over_eps entries must be >= 0");
  for (double r : omega_s_over_eps) require(r >= 0.0 && std::isfinite(r), "omega_s_over_eps entries must be >= 0");
  for (double p : phi_target_rad) require(std::isfinite(p), "phi_target_rad entries must be finite");
  require(steps >= 1, "steps must be positive");
  require(rabi_scale > 0.0 && std::isfinite(rabi_scale), "rabi_scale must be positive");
  require(kappa01 >= 0.0 && kappa10 >= 0.0, "kappa01 and kappa10 must be >= 0");
  if (scenario == Scenario::kPopulationsFig12) require(history_stride >= 1, "history_stride must be positive");
}

SystemParams point_params(const SweepConfig& cfg, const CouplingSpec& coupling, double sigma_over_eps,
                          double gamma_over_eps, double omega_s_over_eps) {
  const double eps = cfg.eps_meV;
  const double sigma = sigma_over_eps * eps;
  SystemParams p = coupling.mode == CouplingMode::kDependent
                       ? SystemParams::dependent(eps, sigma, coupling.eta)
                       : SystemParams::independent(eps, sigma, coupling.lambda0, coupling.lambda1);
  p.gamma = gamma_over_eps * eps;
  p.omega_s = omega_s_over_eps * eps;
  p.kappa01 = cfg.kappa01;
  p.kappa10 = cfg.kappa10;
  p.validate();
  return p;
}

GateReport simulate_gate(const SystemParams& params, const PulsePlan& plan, std::size_t steps) {
  const TimeGrid grid = TimeGrid::over(plan.t_g, steps);
  const HamiltonianFn h = gate_hamiltonian(params, plan);
  if (params.gamma > 0.0) {
    const std::vector<Operator> jumps = cpt_jumps(params, plan);
    const std::array<Operator, 4> units = qubit_matrix_units();
    const std::vector<Operator> images = lindblad_flow(h, jumps, units, grid);
    return evaluate_gate(QubitProcess({images[0], images[1], images[2], images[3]}), plan.phi_target,
                         plan.strategy);
  }
  const PropagationResult res = propagate_unitary(h, grid);
  return evaluate_gate(QubitProcess::from_unitary(*res.final_operator), plan.phi_target, plan.strategy);
}

std::size_t default_workers() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

bool SweepResult::any_failure() const {
  for (const SweepRow& r : rows)
    if (!r.report) return true;
  for (const PopulationTrace& t : traces)
    if (t.status != "ok") return true;
  return false;
}

SweepResult run_scenario(const SweepConfig& cfg, std::size_t workers) {
  cfg.validate();
  struct Point {
    CouplingSpec coupling;
    double phi, gamma, omega_s, sigma;
  };
  std::vector<Point> points;
  for (const CouplingSpec& c : cfg.couplings)
    for (double phi : cfg.phi_target_rad)
      for (double g : cfg.gamma_over_eps)
        for (double w : cfg.omega_s_over_eps)
          for (double r : cfg.sigma_over_eps) points.push_back({c, phi, g, w, r});

  const std::size_t per_point = cfg.strategies.size();
  SweepResult result;
  result.scenario = cfg.scenario;
  result.rows.resize(points.size() * per_point);
  const bool traces = cfg.scenario == Scenario::kPopulationsFig12;
  if (traces) result.traces.resize(points.size() * per_point);

  parallel_for(points.size(), workers, [&](std::size_t i) {
    const Point& pt = points[i];
    const SweepRow baseline =
        run_point(cfg, pt.coupling, Strategy::kUncorrected, pt.sigma, pt.gamma, pt.omega_s, pt.phi);
    for (std::size_t s = 0; s < per_point; ++s) {
      const Strategy strategy = resolve(cfg.strategies[s], pt.coupling.mode);
      SweepRow row = strategy == Strategy::kUncorrected
                         ? baseline
                         : run_point(cfg, pt.coupling, strategy, pt.sigma, pt.gamma, pt.omega_s, pt.phi);
      if (row.report && baseline.report) {
        row.improvement = strategy == Strategy::kUncorrected
                              ? Improvement{1.0, false}
                              : gate_improvement(baseline.report->gate_error, row.report->gate_error);
        if (row.improvement->clipped) row.status = "improvement_clipped";
      }
      result.rows[i * per_point + s] = std::move(row);
      if (traces) {
        result.traces[i * per_point + s] =
            run_trace(cfg, pt.coupling, strategy, pt.sigma, pt.gamma, pt.omega_s, pt.phi);
      }
    }
  });
  return result;
}

std::string to_csv(const SweepResult& result) {
  std::string out =
      "scenario,strategy,sigma_over_eps,eta,lambda0,lambda1,gamma_over_eps,omega_s_over_eps,"
      "phi_target,fidelity,gate_error,unitarity_dev,leakage,improvement,status\n";
  const std::string scenario(to_string(result.scenario));
  for (const SweepRow& r : result.rows) {
    std::vector<std::string> f{
        scenario,
        std::string(to_string(r.strategy)),
        format_number(r.sigma_over_eps),
        r.coupling.mode == CouplingMode::kDependent ? format_number(r.coupling.eta) : "",
        format_number(r.coupling.lambda0),
        format_number(r.coupling.lambda1),
        format_number(r.gamma_over_eps),
        format_number(r.omega_s_over_eps),
        format_number(r.phi_target),
    };
    if (r.report) {
      f.push_back(format_number(r.report->fidelity));
      f.push_back(format_number(r.report->gate_error));
      f.push_back(format_number(r.report->unitarity_deviation));
      f.push_back(format_number(r.report->leakage));
    } else {
      f.insert(f.end(), 4, "");
    }
    f.push_back(r.improvement ? format_number(r.improvement->ratio) : "");
    f.push_back(r.status);
    for (std::size_t k = 0; k < f.size(); ++k) {
      out += f[k];
      out += k + 1 < f.size() ? ',' : '\n';
    }
  }
  return out;
}

std::string populations_csv(const SweepResult& result) {
  std::string out = "strategy,lambda0,lambda1,sigma_over_eps,t,p_D,p_B,p_t,p_u,status\n";
  for (const PopulationTrace& tr : result.traces) {
    const std::string prefix = std::string(to_string(tr.strategy)) + ',' + format_number(tr.coupling.lambda0) +
                               ',' + format_number(tr.coupling.lambda1) + ',' +
                               format_number(tr.sigma_over_eps) + ',';
    if (tr.samples.empty()) {
      out += prefix + ",,,,," + tr.status + '\n';
      continue;
    }
    for (const PopulationSample& s : tr.samples) {
      out += prefix + format_number(s.t);
      for (double p : s.populations) out += ',' + format_number(p);
      out += ',' + tr.status + '\n';
    }
  }
  return out;
}

std::string gate_report_json(const SystemParams& params, Strategy strategy, double phi_target,
                             std::size_t steps, double rabi_scale) {
  PulsePlan plan = build_pulse_plan(params, strategy, phi_target);
  plan.rabi_scale = rabi_scale;
  json j;
  j["strategy"] = std::string(to_string(strategy));
  j["phi_target_rad"] = phi_target;
  j["plan"] = {
      {"sigma_meV", plan.sigma},
      {"t_g_per_meV", plan.t_g},
      {"delta_meV", plan.delta},
      {"design_delta_meV", plan.design_delta},
      {"theta_drag_rad", plan.theta_drag},
      {"in_phase_amplitude", plan.in_phase_amplitude},
      {"quadrature_amplitude_per_meV", plan.quadrature_amplitude},
      {"rabi_scale", plan.rabi_scale},
      {"edge_fraction", plan.edge_fraction()},
  };
  j["system"] = {
      {"eps_meV", params.eps},         {"lambda0", params.lambda0},     {"lambda1", params.lambda1},
      {"gamma_meV", params.gamma},     {"omega_s_meV", params.omega_s}, {"steps", steps},
  };
  if (params.coupling_mode == CouplingMode::kDependent) j["system"]["eta_rad"] = params.eta;

  GateReport report;
  if (params.gamma > 0.0) {
    report = simulate_gate(params, plan, steps);
  } else {
    const CheckedPropagation run =
        propagate_unitary_checked(gate_hamiltonian(params, plan), TimeGrid::over(plan.t_g, steps),
                                  kConvergenceTolerance);
    report = evaluate_gate(QubitProcess::from_unitary(*run.coarse.final_operator), phi_target, strategy);
    j["step_halving_discrepancy"] = run.discrepancy;
    j["convergence_warning"] = run.warning;
  }
  j["report"] = {
      {"fidelity", report.fidelity},
      {"gate_error", report.gate_error},
      {"unitarity_deviation", report.unitarity_deviation},
      {"leakage", report.leakage},
  };
  return j.dump(2);
}

}  // namespace cptgate
