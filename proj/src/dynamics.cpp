#include "cptgate/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace cptgate {

namespace {

constexpr double kNegativeEigenTol = 1e-6;

struct LindbladGenerator {
  Operator h_eff;  // H - i/2 sum L^dagger L
  std::span<const Operator> jumps;
  std::vector<Operator> jumps_dag;

  Operator apply(const Operator& x) const {
    Operator out = (-kI) * (h_eff * x) + kI * (x * h_eff.adjoint());
    for (std::size_t k = 0; k < jumps.size(); ++k) out += jumps[k] * x * jumps_dag[k];
    return out;
  }
};

LindbladGenerator make_generator(const Operator& h, std::span<const Operator> jumps,
                                 const std::vector<Operator>& jumps_dag) {
  Operator g(h.dim());
  for (std::size_t k = 0; k < jumps.size(); ++k) g += jumps_dag[k] * jumps[k];
  return {h - Complex(0.0, 0.5) * g, jumps, jumps_dag};
}

PopulationSample sample_state(double t, const StateVector& psi) {
  PopulationSample s{t, {}};
  for (std::size_t i = 0; i < psi.dim(); ++i) s.populations[i] = std::norm(psi[i]);
  return s;
}

PopulationSample sample_rho(double t, const Operator& rho) {
  PopulationSample s{t, {}};
  for (std::size_t i = 0; i < rho.dim(); ++i) s.populations[i] = rho(i, i).real();
  return s;
}

void check_positive(const Operator& rho, double t) {
  const Eigensystem es = hermitian_eigensystem(rho);
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    if (es.values[i] < -kNegativeEigenTol) {
      std::ostringstream msg;
      msg << "Lindblad integrator failure at t=" << t << ": eigenvalue " << es.values[i]
          << " below " << -kNegativeEigenTol << "; reduce the step size";
      throw IntegratorError(msg.str());
    }
  }
}

bool is_sample_step(const TimeGrid& grid, std::size_t k) {
  return grid.history_stride > 0 && (k % grid.history_stride == 0 || k == grid.steps);
}

PropagationResult run_unitary(const HamiltonianFn& h, const TimeGrid& grid,
                              const StateVector* tracked) {
  grid.validate();
  const double dt = grid.dt();
  PropagationResult result;
  Operator u;
  for (std::size_t k = 0; k < grid.steps; ++k) {
    const double t = grid.t_start + (static_cast<double>(k) + 0.5) * dt;
    const Operator step = hermitian_expm(h(t), dt);
    if (k == 0) {
      u = Operator::identity(step.dim());
      if (tracked && is_sample_step(grid, 0)) result.history.push_back(sample_state(grid.t_start, *tracked));
    }
    u = step * u;
    if (tracked && is_sample_step(grid, k + 1)) {
      const double tk = grid.t_start + static_cast<double>(k + 1) * dt;
      result.history.push_back(sample_state(tk, u * *tracked));
    }
  }
  result.final_operator = u;
  return result;
}

}  // namespace

TimeGrid TimeGrid::over(double t_g, std::size_t steps) {
  TimeGrid g;
  g.t_end = t_g;
  g.steps = steps;
  return g;
}

TimeGrid TimeGrid::with_history(std::size_t stride) const {
  TimeGrid g = *this;
  g.history_stride = stride;
  return g;
}

void TimeGrid::validate() const {
  if (steps == 0) throw std::invalid_argument("time grid needs at least one step");
  if (!(t_end > t_start) || !std::isfinite(t_end) || !std::isfinite(t_start)) {
    throw std::invalid_argument("time grid needs finite t_end > t_start");
  }
}

PropagationResult propagate_unitary(const HamiltonianFn& h, const TimeGrid& grid) {
  return run_unitary(h, grid, nullptr);
}

PropagationResult propagate_unitary(const HamiltonianFn& h, const TimeGrid& grid,
                                    const StateVector& tracked) {
  return run_unitary(h, grid, &tracked);
}

CheckedPropagation propagate_unitary_checked(const HamiltonianFn& h, const TimeGrid& grid,
                                             double tolerance) {
  CheckedPropagation out;
  out.coarse = propagate_unitary(h, grid);
  TimeGrid fine = grid;
  fine.steps *= 2;
  fine.history_stride *= 2;
  out.fine = propagate_unitary(h, fine);
  const Operator& uc = *out.coarse.final_operator;
  const Operator& uf = *out.fine.final_operator;
  out.discrepancy = 1.0 - std::abs((uc.adjoint() * uf).trace()) / static_cast<double>(uc.dim());
  out.warning = !(out.discrepancy <= tolerance);
  return out;
}

std::vector<Operator> lindblad_flow(const HamiltonianFn& h, std::span<const Operator> jumps,
                                    std::span<const Operator> inputs, const TimeGrid& grid) {
  grid.validate();
  std::vector<Operator> jumps_dag;
  jumps_dag.reserve(jumps.size());
  for (const Operator& l : jumps) jumps_dag.push_back(l.adjoint());

  std::vector<Operator> xs(inputs.begin(), inputs.end());
  const double dt = grid.dt();
  for (std::size_t k = 0; k < grid.steps; ++k) {
    const double t = grid.t_start + static_cast<double>(k) * dt;
    const LindbladGenerator g0 = make_generator(h(t), jumps, jumps_dag);
    const LindbladGenerator gm = make_generator(h(t + 0.5 * dt), jumps, jumps_dag);
    const LindbladGenerator g1 = make_generator(h(t + dt), jumps, jumps_dag);
    for (Operator& x : xs) {
      const Operator k1 = g0.apply(x);
      const Operator k2 = gm.apply(x + k1 * Complex(0.5 * dt));
      const Operator k3 = gm.apply(x + k2 * Complex(0.5 * dt));
      const Operator k4 = g1.apply(x + k3 * Complex(dt));
      x += (k1 + k2 * Complex(2.0) + k3 * Complex(2.0) + k4) * Complex(dt / 6.0);
    }
  }
  return xs;
}

PropagationResult propagate_lindblad(const HamiltonianFn& h, std::span<const Operator> jumps,
                                     const DensityMatrix& rho0, const TimeGrid& grid) {
  grid.validate();
  const std::size_t check_stride =
      grid.history_stride > 0 ? grid.history_stride : TimeGrid::kDefaultHistoryStride;

  PropagationResult result;
  Operator rho = rho0.matrix();
  if (grid.history_stride > 0) result.history.push_back(sample_rho(grid.t_start, rho));

  // One step at a time through lindblad_flow keeps a single RK4 kernel.
  TimeGrid step = grid;
  step.steps = 1;
  step.history_stride = 0;
  const double dt = grid.dt();
  for (std::size_t k = 0; k < grid.steps; ++k) {
    step.t_start = grid.t_start + static_cast<double>(k) * dt;
    step.t_end = step.t_start + dt;
    rho = lindblad_flow(h, jumps, std::span<const Operator>(&rho, 1), step).front();
    const double t = step.t_end;
    if ((k + 1) % check_stride == 0 || k + 1 == grid.steps) check_positive(rho, t);
    if (is_sample_step(grid, k + 1)) result.history.push_back(sample_rho(t, rho));
  }
  result.final_rho = rho;
  return result;
}

const std::vector<PopulationSample>& population_history(const PropagationResult& result) {
  if (result.history.empty()) {
    throw std::logic_error("population_history: no history was recorded for this run");
  }
  return result.history;
}

}  // namespace cptgate
