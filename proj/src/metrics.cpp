#include "cptgate/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "cptgate/model.hpp"

namespace cptgate {

namespace {

constexpr std::size_t kQubitDim = 2;
constexpr std::size_t kLevels = 4;

}  // namespace

Operator ideal_gate(double phi) {
  return Operator::diagonal({std::exp(-kI * phi), std::exp(kI * phi)});
}

Operator rotation_ideal(double phi_target) { return ideal_gate(-0.5 * phi_target); }

std::array<Operator, 6> cardinal_states() {
  // Written out entrywise so every entry is exact in binary floating point.
  const Complex h = 0.5;
  const Complex ih = 0.5 * kI;
  return {
      Operator(2, {1.0, 0.0, 0.0, 0.0}), Operator(2, {0.0, 0.0, 0.0, 1.0}),
      Operator(2, {h, h, h, h}),         Operator(2, {h, -h, -h, h}),
      Operator(2, {h, -ih, ih, h}),      Operator(2, {h, ih, -ih, h}),
  };
}

QubitProcess::QubitProcess(std::array<Operator, 4> images) : images_(std::move(images)) {
  for (const Operator& m : images_) {
    if (m.dim() != kLevels) throw NumericsError("qubit process images must be 4x4");
  }
}

QubitProcess QubitProcess::from_channel(const Channel& channel) {
  std::array<Operator, 4> images;
  for (std::size_t i = 0; i < kQubitDim; ++i)
    for (std::size_t j = 0; j < kQubitDim; ++j)
      images[kQubitDim * i + j] = channel(Operator::unit(kLevels, i, j));
  return QubitProcess(images);
}

QubitProcess QubitProcess::from_unitary(const Operator& u) {
  const Operator ud = u.adjoint();
  return from_channel([&](const Operator& x) { return u * x * ud; });
}

Operator QubitProcess::apply(const Operator& rho_qubit) const {
  if (rho_qubit.dim() != kQubitDim) throw NumericsError("qubit input must be 2x2");
  Operator out(kLevels);
  for (std::size_t i = 0; i < kQubitDim; ++i)
    for (std::size_t j = 0; j < kQubitDim; ++j)
      out += images_[kQubitDim * i + j] * rho_qubit(i, j);
  return out;
}

double average_gate_fidelity(const QubitProcess& process, const Operator& u_ideal) {
  const Operator ud = u_ideal.adjoint();
  double sum = 0.0;
  for (const Operator& rho : cardinal_states()) {
    const Operator projected = process.apply(rho).block(kQubitDim);
    sum += (u_ideal * rho * ud * projected).trace().real();
  }
  return sum / 6.0;
}

double average_gate_fidelity(const QubitProcess& process, double phi) {
  return average_gate_fidelity(process, ideal_gate(phi));
}

double leakage_of(const QubitProcess& process) {
  double worst = 0.0;
  for (const Operator& rho : cardinal_states()) {
    const Operator out = process.apply(rho);
    worst = std::max(worst, out(basis::kTarget, basis::kTarget).real() +
                                out(basis::kUnwanted, basis::kUnwanted).real());
  }
  return worst;
}

double unitarity_deviation(const QubitProcess& process) {
  Operator m(kQubitDim);
  for (std::size_t i = 0; i < kQubitDim; ++i)
    for (std::size_t j = 0; j < kQubitDim; ++j)
      m(i, j) = process.images()[kQubitDim * i + j].block(kQubitDim).trace();
  return frobenius_deviation_from_identity(m);
}

Improvement gate_improvement(double err_baseline, double err_corrected) {
  if (err_corrected <= Improvement::kFloor) {
    return {err_baseline / Improvement::kFloor, true};
  }
  return {err_baseline / err_corrected, false};
}

GateReport evaluate_gate(const QubitProcess& process, double phi_target, Strategy strategy) {
  GateReport r;
  r.fidelity = average_gate_fidelity(process, rotation_ideal(phi_target));
  r.gate_error = 1.0 - r.fidelity;
  r.unitarity_deviation = unitarity_deviation(process);
  r.leakage = leakage_of(process);
  r.phi_target = phi_target;
  r.strategy = strategy;
  return r;
}

}  // namespace cptgate
