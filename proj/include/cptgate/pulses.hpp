#pragma once

// Closed-form pulse design: sech envelopes, transitionless-pulse phases, the
// exact detuning for dependent couplings and the first-order DRAG corrections.
//
// Units: energies in any consistent unit (meV throughout the tools), hbar = 1,
// so times are in inverse energy units.

#include <stdexcept>
#include <string>
#include <string_view>

namespace cptgate {

struct SystemParams;

/// Raised when a design formula has no valid solution for the requested
/// parameters (negative discriminant, tangent singularity, ...).
class DesignError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Strategy { kUncorrected, kExact, kDrag };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view name);

enum class RootBranch { kMinus, kPlus };

/// sigma * sech(sigma (t - t_g/2))
double sech_envelope(double sigma, double t_g, double t);
/// Time derivative of sech_envelope.
double sech_envelope_derivative(double sigma, double t_g, double t);

/// Phase imprinted on the driven ground state by a transitionless sech pulse:
/// 2 atan(sigma/delta). At delta = 0 the value pi (the delta -> 0+ limit) is
/// returned.
double sech_phase(double sigma, double delta);

/// Relative phase between the bright/target and dark/unwanted two-level
/// problems at equal couplings, computed as the difference of the two branch
/// phases.
double total_phase_dependent(double sigma, double delta, double eps);

/// Detuning that makes total_phase_dependent equal -phi_abs (mod 2 pi).
/// The minus branch tends to the ideal-system detuning as eps grows.
/// Throws DesignError when no real detuning exists.
double exact_detuning(double sigma, double eps, double phi_abs,
                      RootBranch branch = RootBranch::kMinus);

struct DragEnvelopes {
  double omega_o = 0.0;
  double omega_c = 0.0;
};

/// First-order DRAG drive envelopes (in-phase and quadrature) at time t.
DragEnvelopes drag_envelopes(double sigma, double t_g, double delta, double eps,
                             double lambda0, double lambda1, double t);

/// Relative dark/bright phase induced by the first-order DRAG frame.
double drag_theta(double sigma, double eps, double lambda0, double lambda1);

/// Detuning sigma / tan((phi + theta)/2) that absorbs the DRAG phase.
double drag_detuning(double sigma, double phi_target, double theta);

/// Detuning sigma / tan(phi/2) realising rotation phi with an ideal
/// transitionless pulse (inverse of sech_phase).
double transitionless_detuning(double sigma, double phi);

/// Fully resolved drive. Envelopes are closed-form:
///   omega_o(t) = rabi_scale * in_phase_amplitude  * Omega(t)
///   omega_c(t) = rabi_scale * quadrature_amplitude * dOmega/dt
/// with Omega the sech envelope. Amplitudes are in the lab-drive
/// normalisation, where sqrt(2) * Omega gives a bright-target coupling Omega.
struct PulsePlan {
  Strategy strategy = Strategy::kUncorrected;
  double sigma = 0.0;
  double t_g = 0.0;
  double delta = 0.0;          // detuning applied to the drive
  double design_delta = 0.0;   // sigma / tan(phi/2) before any correction
  double phi_target = 0.0;
  double theta_drag = 0.0;     // 0 unless strategy == kDrag
  double in_phase_amplitude = 0.0;
  double quadrature_amplitude = 0.0;
  double rabi_scale = 1.0;
  double theta_cpt = 1.5707963267948966;  // X rotation: equal Rabi frequencies
  double alpha_cpt = 0.0;

  double omega_o(double t) const;
  double omega_c(double t) const;
  /// Envelope value at the window edges relative to its peak.
  double edge_fraction() const;
};

/// Builds the drive for one of the three strategies. phi_target is the
/// rotation angle in the dark/bright subspace.
PulsePlan build_pulse_plan(const SystemParams& params, Strategy strategy, double phi_target);

}  // namespace cptgate
