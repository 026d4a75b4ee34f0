#include "cptgate/model.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace cptgate {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kCouplingTol = 1e-12;

using namespace basis;

// sigma^o_{m,n} = |n><m| + |m><n|, sigma^c_{m,n} = i|n><m| - i|m><n|, so
// c * (omega_o sigma^o + omega_c sigma^c) puts c (omega_o - i omega_c) at (m, n).
void add_drive(Operator& h, std::size_t m, std::size_t n, double c, double omega_o, double omega_c) {
  const Complex w = c * Complex(omega_o, -omega_c);
  h(m, n) += w;
  h(n, m) += std::conj(w);
}

Operator sigma_c(std::size_t m, std::size_t n) {
  Operator s(4);
  s(n, m) = kI;
  s(m, n) = -kI;
  return s;
}

Operator drag_generator_direction(const SystemParams& p) {
  return sigma_c(kDark, kUnwanted) * Complex(-(p.lambda0 - p.lambda1) / (2.0 * kSqrt2 * p.eps)) +
         sigma_c(kBright, kUnwanted) * Complex(-(p.lambda0 + p.lambda1) / (2.0 * kSqrt2 * p.eps));
}

bool close(double a, double b) {
  return std::abs(a - b) <= kCouplingTol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace

Couplings dependent_couplings(double eta) {
  const double s = std::sin(eta);
  const double c = std::cos(eta);
  if (std::abs(s) < kCouplingTol || std::abs(c) < kCouplingTol) {
    std::ostringstream msg;
    msg << "dependent_couplings: eta=" << eta << " makes a coupling infinite or zero";
    throw DesignError(msg.str());
  }
  // cot(eta) as tan(pi/2 - eta) keeps lambda0 + lambda1 exactly zero at pi/4.
  return {-std::tan(eta), std::tan(kHalfPi - eta)};
}

SystemParams SystemParams::dependent(double eps, double sigma, double eta) {
  SystemParams p;
  const Couplings c = dependent_couplings(eta);
  p.eps = eps;
  p.sigma = sigma;
  p.t_g = 16.0 / sigma;
  p.eta = eta;
  p.lambda0 = c.lambda0;
  p.lambda1 = c.lambda1;
  p.coupling_mode = CouplingMode::kDependent;
  p.validate();
  return p;
}

SystemParams SystemParams::independent(double eps, double sigma, double lambda0, double lambda1) {
  SystemParams p;
  p.eps = eps;
  p.sigma = sigma;
  p.t_g = 16.0 / sigma;
  p.lambda0 = lambda0;
  p.lambda1 = lambda1;
  p.coupling_mode = CouplingMode::kIndependent;
  p.validate();
  return p;
}

void SystemParams::validate() const {
  auto fail = [](const char* what, double v) {
    std::ostringstream msg;
    msg << "invalid system parameters: " << what << " (got " << v << ")";
    throw DesignError(msg.str());
  };
  if (!(eps > 0.0) || !std::isfinite(eps)) fail("eps must be positive", eps);
  if (!(sigma > 0.0) || !std::isfinite(sigma)) fail("sigma must be positive", sigma);
  if (!(t_g > 0.0) || !std::isfinite(t_g)) fail("t_g must be positive", t_g);
  if (!(gamma >= 0.0)) fail("gamma must be non-negative", gamma);
  if (!(omega_s >= 0.0)) fail("omega_s must be non-negative", omega_s);
  if (!std::isfinite(lambda0) || !std::isfinite(lambda1)) fail("couplings must be finite", lambda0);
  if (coupling_mode == CouplingMode::kDependent) {
    const Couplings c = dependent_couplings(eta);
    if (!close(lambda0, c.lambda0)) fail("dependent mode requires lambda0 = -tan(eta)", lambda0);
    if (!close(lambda1, c.lambda1)) fail("dependent mode requires lambda1 = cot(eta)", lambda1);
  }
}

Operator cpt_transform(double theta, double alpha) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const Complex e = std::exp(kI * alpha);
  Operator t = Operator::identity(4);
  // Rows are the conjugated lab components of |D> and |B>.
  t(kDark, kLab0) = c;
  t(kDark, kLab1) = -std::conj(e) * s;
  t(kBright, kLab0) = e * s;
  t(kBright, kLab1) = c;
  return t;
}

std::array<double, 4> rotating_frame_rates(double delta, double eps) {
  return {0.5 * delta, 0.5 * delta, -0.5 * delta, -0.5 * delta + eps};
}

Operator rotating_frame(double delta, double eps, double t) {
  const auto a = rotating_frame_rates(delta, eps);
  Operator f(4);
  for (std::size_t i = 0; i < 4; ++i) f(i, i) = std::exp(-kI * (a[i] * t));
  return f;
}

Operator h_cpt(const SystemParams& params, const PulsePlan& plan, double t) {
  const auto a = rotating_frame_rates(plan.delta, params.eps);
  Operator h = Operator::diagonal({a[0], a[1], a[2], a[3]});
  const double oo = plan.omega_o(t);
  const double oc = plan.omega_c(t);
  const double k = 1.0 / (2.0 * kSqrt2);
  add_drive(h, kBright, kTarget, 2.0 * k, oo, oc);
  add_drive(h, kDark, kUnwanted, (params.lambda0 - params.lambda1) * k, oo, oc);
  add_drive(h, kBright, kUnwanted, (params.lambda0 + params.lambda1) * k, oo, oc);
  return h;
}

Operator h_lab_interaction(const SystemParams& params, const PulsePlan& plan, double t) {
  Operator h(4);
  const Complex w = 0.5 * Complex(plan.omega_o(t), -plan.omega_c(t));
  const Complex to_t = w * std::exp(kI * (plan.delta * t));
  const Complex to_u = w * std::exp(kI * ((plan.delta - params.eps) * t));
  const std::array<double, 2> lambda{params.lambda0, params.lambda1};
  for (std::size_t j : {kLab0, kLab1}) {
    h(j, kTarget) = to_t;
    h(j, kUnwanted) = lambda[j] * to_u;
    h(kTarget, j) = std::conj(h(j, kTarget));
    h(kUnwanted, j) = std::conj(h(j, kUnwanted));
  }
  return h;
}

Operator h_crosstalk(const SystemParams& params, const PulsePlan& plan, double t) {
  const auto a = rotating_frame_rates(plan.delta, params.eps);
  Operator h = Operator::diagonal({a[0], a[1], a[2], a[3]});
  const Complex w = 0.5 * Complex(plan.omega_o(t), -plan.omega_c(t));
  const Complex leg0 = 1.0 + params.kappa10 * std::exp(-kI * (params.omega_s * t));
  const Complex leg1 = 1.0 + params.kappa01 * std::exp(kI * (params.omega_s * t));
  const std::array<Complex, 2> factor{w * leg0, w * leg1};
  const std::array<double, 2> lambda{params.lambda0, params.lambda1};
  for (std::size_t j : {kLab0, kLab1}) {
    h(j, kTarget) = factor[j];
    h(j, kUnwanted) = lambda[j] * factor[j];
    h(kTarget, j) = std::conj(h(j, kTarget));
    h(kUnwanted, j) = std::conj(h(j, kUnwanted));
  }
  return h;
}

Operator lab_to_cpt(const Operator& lab, double theta, double alpha) {
  const Operator t = cpt_transform(theta, alpha);
  return t * lab * t.adjoint();
}

DragOrders h_drag_orders(const SystemParams& params, double t) {
  const double om = sech_envelope(params.sigma, params.t_g, t);
  const double om2 = om * om;
  const double d = params.delta;
  const double l0 = params.lambda0;
  const double l1 = params.lambda1;
  const double e = params.eps;

  DragOrders out{Operator(3), Operator(3)};
  out.h0(0, 0) = 0.5 * d;
  out.h0(1, 1) = 0.5 * d;
  out.h0(2, 2) = -0.5 * d;
  out.h0(1, 2) = om;
  out.h0(2, 1) = om;

  const double bt = -(l0 + l1) * (l0 + l1) * om2 / (16.0 * e);
  out.h1(0, 0) = -(l0 - l1) * (l0 - l1) * om2 / (8.0 * e);
  out.h1(1, 1) = bt;
  out.h1(2, 2) = bt;
  out.h1(0, 1) = (l1 * l1 - l0 * l0) * om2 / (8.0 * e);
  out.h1(1, 0) = out.h1(0, 1);
  return out;
}

Operator s1_generator(const SystemParams& params, const PulsePlan& plan, double t) {
  return drag_generator_direction(params) * Complex(kSqrt2 * sech_envelope(plan.sigma, plan.t_g, t));
}

Operator drag_frame_hamiltonian(const SystemParams& params, const PulsePlan& plan, double t) {
  const Operator k = drag_generator_direction(params);
  const Operator a = hermitian_expm(s1_generator(params, plan, t), 1.0);
  const double s_dot = kSqrt2 * sech_envelope_derivative(plan.sigma, plan.t_g, t);
  return a.adjoint() * h_cpt(params, plan, t) * a - k * Complex(s_dot);
}

double qubit_unwanted_block_norm(const Operator& h) {
  const double s = std::norm(h(kDark, kUnwanted)) + std::norm(h(kBright, kUnwanted)) +
                   std::norm(h(kUnwanted, kDark)) + std::norm(h(kUnwanted, kBright));
  return std::sqrt(s);
}

std::array<Operator, 4> lindblad_generators(double gamma) {
  if (!(gamma >= 0.0)) throw DesignError("lindblad_generators: gamma must be non-negative");
  const double g = std::sqrt(gamma);
  std::array<Operator, 4> out;
  std::size_t k = 0;
  for (std::size_t i : {kLab0, kLab1}) {
    for (std::size_t j : {kTarget, kUnwanted}) {
      out[k] = Operator::unit(4, i, j) * Complex(g);
      ++k;
    }
  }
  return out;
}

}  // namespace cptgate
