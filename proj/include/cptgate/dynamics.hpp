#pragma once

// Fixed-step propagation of the Schroedinger and Lindblad equations.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cptgate/numerics.hpp"

namespace cptgate {

using HamiltonianFn = std::function<Operator(double)>;

/// Raised when the Lindblad integrator leaves the physical state space.
class IntegratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TimeGrid {
  static constexpr std::size_t kDefaultSteps = 4096;
  static constexpr std::size_t kDefaultHistoryStride = 8;

  double t_start = 0.0;
  double t_end = 0.0;
  std::size_t steps = kDefaultSteps;
  /// 0 disables history sampling.
  std::size_t history_stride = 0;

  static TimeGrid over(double t_g, std::size_t steps = kDefaultSteps);
  TimeGrid with_history(std::size_t stride = kDefaultHistoryStride) const;
  double dt() const { return (t_end - t_start) / static_cast<double>(steps); }
  void validate() const;
};

struct PopulationSample {
  double t = 0.0;
  std::array<double, 4> populations{};
};

struct PropagationResult {
  std::optional<Operator> final_operator;  // unitary runs
  /// Raw integrated density matrix. Not renormalised, so trace drift and
  /// positivity can be inspected; DensityMatrix(*final_rho) validates.
  std::optional<Operator> final_rho;
  std::vector<PopulationSample> history;
};

/// Exponential-midpoint stepping U <- exp(-i H(t_k + dt/2) dt) U.
PropagationResult propagate_unitary(const HamiltonianFn& h, const TimeGrid& grid);

/// As above, additionally sampling |<k|U(t) psi0>|^2 every history_stride
/// steps (and at both ends).
PropagationResult propagate_unitary(const HamiltonianFn& h, const TimeGrid& grid,
                                    const StateVector& tracked);

struct CheckedPropagation {
  PropagationResult coarse;
  PropagationResult fine;  // twice the steps
  /// 1 - |Tr(U_coarse^dagger U_fine)| / d, insensitive to global phase.
  double discrepancy = 0.0;
  bool warning = false;
};

/// Step-halving self-check. warning is set when discrepancy > tolerance.
CheckedPropagation propagate_unitary_checked(const HamiltonianFn& h, const TimeGrid& grid,
                                             double tolerance);

/// drho/dt = -i[H, rho] + sum_k (L rho L^dagger - 1/2 {L^dagger L, rho}),
/// classical RK4, no trace renormalisation. Throws IntegratorError when an
/// eigenvalue of rho falls below -1e-6 (checked at every history sample, or
/// every kDefaultHistoryStride steps, and at the end).
PropagationResult propagate_lindblad(const HamiltonianFn& h, std::span<const Operator> jumps,
                                     const DensityMatrix& rho0, const TimeGrid& grid);

/// Applies the same linear flow to arbitrary (not necessarily physical)
/// operators, e.g. matrix units for process reconstruction. No positivity
/// checks.
std::vector<Operator> lindblad_flow(const HamiltonianFn& h, std::span<const Operator> jumps,
                                    std::span<const Operator> inputs, const TimeGrid& grid);

/// Throws std::logic_error if the run did not record a history.
const std::vector<PopulationSample>& population_history(const PropagationResult& result);

}  // namespace cptgate
