#include "cptgate/pulses.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cptgate/model.hpp"

namespace cptgate {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kSingularTol = 1e-12;
constexpr double kRoundTripTol = 1e-10;

double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  return a;
}

double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kUncorrected:
      return "uncorrected";
    case Strategy::kExact:
      return "exact";
    case Strategy::kDrag:
      return "drag";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "uncorrected") return Strategy::kUncorrected;
  if (name == "exact") return Strategy::kExact;
  if (name == "drag") return Strategy::kDrag;
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

double sech_envelope(double sigma, double t_g, double t) {
  return sigma * sech(sigma * (t - 0.5 * t_g));
}

double sech_envelope_derivative(double sigma, double t_g, double t) {
  const double x = sigma * (t - 0.5 * t_g);
  return -sigma * sigma * sech(x) * std::tanh(x);
}

double sech_phase(double sigma, double delta) {
  if (delta == 0.0) return kPi;
  return 2.0 * std::atan(sigma / delta);
}

double total_phase_dependent(double sigma, double delta, double eps) {
  return sech_phase(sigma, delta) - sech_phase(sigma, delta - eps);
}

double exact_detuning(double sigma, double eps, double phi_abs, RootBranch branch) {
  if (!(phi_abs > 0.0 && phi_abs < 2.0 * kPi)) {
    throw DesignError("exact_detuning: |phi| must lie in (0, 2 pi)");
  }
  const double cot_half = std::cos(0.5 * phi_abs) / std::sin(0.5 * phi_abs);
  const double disc = eps * eps + 4.0 * eps * sigma * cot_half - 4.0 * sigma * sigma;
  if (disc < 0.0) {
    std::ostringstream msg;
    msg << "exact_detuning: no real detuning for sigma=" << sigma << ", eps=" << eps
        << ", |phi|=" << phi_abs << " (discriminant " << disc << " < 0)";
    throw DesignError(msg.str());
  }
  const double root = std::sqrt(disc);
  // The minus root is rewritten to avoid cancellation when eps >> sigma.
  const double delta = branch == RootBranch::kMinus ? 2.0 * sigma * (sigma - eps * cot_half) / (eps + root)
                                                    : 0.5 * (eps + root);

  const double miss = wrap_angle(total_phase_dependent(sigma, delta, eps) + phi_abs);
  if (std::abs(miss) > kRoundTripTol) {
    std::ostringstream msg;
    msg << "exact_detuning: root delta=" << delta << " misses the target phase by " << miss;
    throw DesignError(msg.str());
  }
  return delta;
}

DragEnvelopes drag_envelopes(double sigma, double t_g, double delta, double eps, double lambda0,
                             double lambda1, double t) {
  if (eps == 0.0) throw DesignError("drag_envelopes: eps must be nonzero");
  const double sum2 = (lambda0 + lambda1) * (lambda0 + lambda1);
  return {kSqrt2 * (1.0 + delta * sum2 / (16.0 * eps)) * sech_envelope(sigma, t_g, t),
          kSqrt2 / (16.0 * eps) * sum2 * sech_envelope_derivative(sigma, t_g, t)};
}

double drag_theta(double sigma, double eps, double lambda0, double lambda1) {
  if (eps == 0.0) throw DesignError("drag_theta: eps must be nonzero");
  return -(lambda0 * lambda0 + lambda1 * lambda1 - 6.0 * lambda0 * lambda1) * sigma / (4.0 * eps);
}

double drag_detuning(double sigma, double phi_target, double theta) {
  const double half = 0.5 * (phi_target + theta);
  const double s = std::sin(half);
  if (std::abs(s) < kSingularTol) {
    std::ostringstream msg;
    msg << "drag_detuning: (phi + theta)/2 = " << half << " is a multiple of pi";
    throw DesignError(msg.str());
  }
  return sigma * std::cos(half) / s;
}

double transitionless_detuning(double sigma, double phi) {
  const double half = 0.5 * phi;
  const double s = std::sin(half);
  if (std::abs(s) < kSingularTol) throw DesignError("rotation angle must not be a multiple of 2 pi");
  return sigma * std::cos(half) / s;
}

double PulsePlan::omega_o(double t) const {
  return rabi_scale * in_phase_amplitude * sech_envelope(sigma, t_g, t);
}

double PulsePlan::omega_c(double t) const {
  if (quadrature_amplitude == 0.0) return 0.0;
  return rabi_scale * quadrature_amplitude * sech_envelope_derivative(sigma, t_g, t);
}

double PulsePlan::edge_fraction() const { return sech(0.5 * sigma * t_g); }

PulsePlan build_pulse_plan(const SystemParams& params, Strategy strategy, double phi_target) {
  params.validate();
  PulsePlan plan;
  plan.strategy = strategy;
  plan.sigma = params.sigma;
  plan.t_g = params.t_g;
  plan.phi_target = phi_target;
  plan.design_delta = transitionless_detuning(params.sigma, phi_target);
  plan.in_phase_amplitude = kSqrt2;

  switch (strategy) {
    case Strategy::kUncorrected:
      plan.delta = plan.design_delta;
      break;
    case Strategy::kExact:
      if (params.coupling_mode != CouplingMode::kDependent) {
        throw DesignError("exact strategy requires dependent couplings");
      }
      plan.delta = exact_detuning(params.sigma, params.eps, std::abs(phi_target));
      break;
    case Strategy::kDrag: {
      const double sum2 = (params.lambda0 + params.lambda1) * (params.lambda0 + params.lambda1);
      plan.theta_drag = drag_theta(params.sigma, params.eps, params.lambda0, params.lambda1);
      plan.delta = drag_detuning(params.sigma, phi_target, plan.theta_drag);
      // Envelope prefactor uses the design detuning; the theta shift only
      // moves the drive frequency.
      plan.in_phase_amplitude = kSqrt2 * (1.0 + plan.design_delta * sum2 / (16.0 * params.eps));
      plan.quadrature_amplitude = kSqrt2 * sum2 / (16.0 * params.eps);
      break;
    }
  }
  return plan;
}

}  // namespace cptgate
