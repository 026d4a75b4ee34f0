#pragma once

// Hamiltonian builders for the four-level Lambda system.
//
// Basis conventions (fixed, shared by every builder and metric):
//   CPT frame: 0 = |D>, 1 = |B>, 2 = |t>, 3 = |u>
//   lab frame: 0 = |0>, 1 = |1>, 2 = |t>, 3 = |u>
// All Hamiltonians are post-RWA. hbar = 1.

#include <array>
#include <cstddef>

#include "cptgate/numerics.hpp"
#include "cptgate/pulses.hpp"

namespace cptgate {

namespace basis {
inline constexpr std::size_t kDark = 0;
inline constexpr std::size_t kBright = 1;
inline constexpr std::size_t kTarget = 2;
inline constexpr std::size_t kUnwanted = 3;
inline constexpr std::size_t kLab0 = 0;
inline constexpr std::size_t kLab1 = 1;
}  // namespace basis

enum class CouplingMode { kDependent, kIndependent };

struct Couplings {
  double lambda0 = 0.0;
  double lambda1 = 0.0;
};

/// lambda0 = -tan(eta), lambda1 = cot(eta). Throws DesignError at the
/// singular angles.
Couplings dependent_couplings(double eta);

struct SystemParams {
  double eps = 0.0;
  double delta = 0.0;
  double lambda0 = 0.0;
  double lambda1 = 0.0;
  double eta = 0.0;  // only meaningful in dependent mode
  double sigma = 0.0;
  double t_g = 0.0;
  double gamma = 0.0;
  double omega_s = 0.0;
  double kappa01 = 1.0;
  double kappa10 = 1.0;
  CouplingMode coupling_mode = CouplingMode::kIndependent;

  /// Dependent couplings fixed by eta; t_g defaults to 16 / sigma.
  static SystemParams dependent(double eps, double sigma, double eta);
  static SystemParams independent(double eps, double sigma, double lambda0, double lambda1);

  /// Throws DesignError if any invariant is violated.
  void validate() const;
};

/// Lab -> CPT coordinate map: psi_cpt = T psi_lab, identity on {t, u}.
Operator cpt_transform(double theta, double alpha);

/// Diagonal of the rotating-frame generator: (delta/2, delta/2, -delta/2, -delta/2 + eps).
std::array<double, 4> rotating_frame_rates(double delta, double eps);

/// exp(-i diag(rates) t), the map from the CPT frame into its rotating frame.
Operator rotating_frame(double delta, double eps, double t);

/// Rotating CPT-frame Hamiltonian (X rotation). Bright-target element is
/// (omega_o - i omega_c) / sqrt(2).
Operator h_cpt(const SystemParams& params, const PulsePlan& plan, double t);

/// Interaction-frame lab Hamiltonian with explicit e^{i delta t} and
/// e^{i (delta - eps) t} factors; each leg carries (omega_o - i omega_c) / 2.
Operator h_lab_interaction(const SystemParams& params, const PulsePlan& plan, double t);

/// Rotating lab-basis Hamiltonian including cross-talk of each drive onto the
/// opposite leg. The |0> leg picks up kappa10 e^{-i omega_s t}, the |1> leg
/// kappa01 e^{+i omega_s t}.
Operator h_crosstalk(const SystemParams& params, const PulsePlan& plan, double t);

/// T H T^dagger for a lab-basis operator.
Operator lab_to_cpt(const Operator& lab, double theta = kHalfPi, double alpha = 0.0);

struct DragOrders {
  Operator h0;  // 3x3 on {D, B, t}
  Operator h1;
};

/// Zeroth- and first-order DRAG-frame Hamiltonians for the bare sech drive
/// and params.delta. Verification only.
DragOrders h_drag_orders(const SystemParams& params, double t);

/// First-order DRAG generator S(t) = sqrt(2) Omega(t) K with
/// K = -1/(2 sqrt(2) eps) [(l0 - l1) sc_{D,u} + (l0 + l1) sc_{B,u}].
/// Omega is the bare sech envelope of the plan.
Operator s1_generator(const SystemParams& params, const PulsePlan& plan, double t);

/// A^dagger H A - dS/dt with A = exp(-i S), S = s1_generator.
Operator drag_frame_hamiltonian(const SystemParams& params, const PulsePlan& plan, double t);

/// Frobenius norm of the {D,B} <-> {u} off-diagonal blocks of a 4x4 operator.
double qubit_unwanted_block_norm(const Operator& h);

/// sqrt(gamma) |i><j| for i in {0,1}, j in {t,u}, in the lab basis, ordered
/// (0,t), (0,u), (1,t), (1,u).
std::array<Operator, 4> lindblad_generators(double gamma);

}  // namespace cptgate
