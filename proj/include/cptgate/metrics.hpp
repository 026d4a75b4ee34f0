#pragma once

// Gate-quality metrics on the {|D>, |B>} qubit embedded in the four-level
// space. Outputs are projected onto the qubit without renormalisation, so
// leakage lowers the fidelity directly.

#include <array>
#include <functional>

#include "cptgate/numerics.hpp"
#include "cptgate/pulses.hpp"

namespace cptgate {

/// diag(e^{-i phi}, e^{i phi}) on {D, B}.
Operator ideal_gate(double phi);

/// A rotation by phi_target leaves the bright state with relative phase
/// e^{-i phi_target}, i.e. ideal_gate(-phi_target / 2) up to global phase.
Operator rotation_ideal(double phi_target);

/// Projectors for the +-z, +-x, +-y states of the {D, B} qubit (2x2).
std::array<Operator, 6> cardinal_states();

/// Linear map on 4x4 operators.
using Channel = std::function<Operator(const Operator&)>;

/// Images of the qubit matrix units |i><j| (i, j in {D, B}) under a four-level
/// channel; linearity gives the image of any qubit input.
class QubitProcess {
 public:
  /// images[2 i + j] = E(|i><j|), each 4x4.
  explicit QubitProcess(std::array<Operator, 4> images);
  static QubitProcess from_channel(const Channel& channel);
  static QubitProcess from_unitary(const Operator& u);

  /// E(rho) for a 2x2 qubit input; returns the 4x4 output.
  Operator apply(const Operator& rho_qubit) const;
  const std::array<Operator, 4>& images() const { return images_; }

 private:
  std::array<Operator, 4> images_;
};

/// (1/6) sum_j Tr[U rho_j U^dagger P E(rho_j) P].
double average_gate_fidelity(const QubitProcess& process, const Operator& u_ideal);
/// Same with U = ideal_gate(phi).
double average_gate_fidelity(const QubitProcess& process, double phi);

/// max_j Tr[(Pi_t + Pi_u) E(rho_j)] over the six cardinal inputs.
double leakage_of(const QubitProcess& process);

/// ||M - 1||_F with M_ij = Tr[P E(|i><j|) P]. For a unitary this is
/// ||B B^dagger - 1||_F of the projected qubit block B.
double unitarity_deviation(const QubitProcess& process);

struct Improvement {
  static constexpr double kFloor = 1e-12;
  double ratio = 0.0;
  bool clipped = false;  // corrected error was floored at kFloor
};

Improvement gate_improvement(double err_baseline, double err_corrected);

struct GateReport {
  double fidelity = 0.0;
  double gate_error = 0.0;
  double unitarity_deviation = 0.0;
  double leakage = 0.0;
  double phi_target = 0.0;
  Strategy strategy = Strategy::kUncorrected;
};

/// Scores a process against rotation_ideal(phi_target).
GateReport evaluate_gate(const QubitProcess& process, double phi_target, Strategy strategy);

}  // namespace cptgate
