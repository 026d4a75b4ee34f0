#include "cptgate/model.hpp"

#include <cmath>
#include <random>

#include "cptgate/dynamics.hpp"
#include "test_support.hpp"

namespace cptgate {
namespace {

using namespace basis;
using testing::max_entry_diff;

PulsePlan plan_for(const SystemParams& p, Strategy s, double phi = -kHalfPi) {
  return build_pulse_plan(p, s, phi);
}

TEST(DependentCouplings, Examples) {
  const Couplings quarter = dependent_couplings(kPi / 4);
  EXPECT_NEAR(quarter.lambda0, -1.0, 1e-15);
  EXPECT_NEAR(quarter.lambda1, 1.0, 1e-15);
  const Couplings third = dependent_couplings(kPi / 3);
  EXPECT_NEAR(third.lambda0, -std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(third.lambda1, 1.0 / std::sqrt(3.0), 1e-15);
  EXPECT_THROW(dependent_couplings(0.0), DesignError);
  EXPECT_THROW(dependent_couplings(kHalfPi), DesignError);
}

TEST(DependentCouplingsProperty, ProductIsMinusOne) {
  std::mt19937_64 rng(testing::kSeed);
  std::uniform_real_distribution<double> eta(0.01, kHalfPi - 0.01);
  for (int trial = 0; trial < 200; ++trial) {
    const Couplings c = dependent_couplings(eta(rng));
    EXPECT_NEAR(c.lambda0 * c.lambda1, -1.0, 1e-12);
  }
}

TEST(SystemParams, FactoriesSetDefaultWindow) {
  const SystemParams p = SystemParams::dependent(0.08, 0.04, kPi / 4);
  EXPECT_DOUBLE_EQ(p.t_g, 400.0);
  EXPECT_EQ(p.coupling_mode, CouplingMode::kDependent);
  EXPECT_EQ(p.kappa01, 1.0);
  EXPECT_EQ(p.kappa10, 1.0);
}

TEST(SystemParams, ValidateRejectsBadValues) {
  EXPECT_THROW(SystemParams::independent(0.0, 1.0, 1.0, 1.0), DesignError);
  EXPECT_THROW(SystemParams::independent(1.0, -1.0, 1.0, 1.0), DesignError);
  SystemParams p = SystemParams::independent(1.0, 0.5, 1.0, 1.0);
  p.gamma = -1e-3;
  EXPECT_THROW(p.validate(), DesignError);
  p.gamma = 0.0;
  p.omega_s = -1.0;
  EXPECT_THROW(p.validate(), DesignError);
  SystemParams d = SystemParams::dependent(1.0, 0.5, kPi / 4);
  d.lambda1 = 1.2;
  EXPECT_THROW(d.validate(), DesignError);
}

TEST(CptTransform, Examples) {
  const Operator id = cpt_transform(0.0, 0.0);
  EXPECT_LT(max_entry_diff(id, Operator::identity(4)), 1e-15);

  const Operator x = cpt_transform(kHalfPi, 0.0);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(x(kDark, kLab0)), r, 1e-15);
  EXPECT_NEAR(std::abs(x(kDark, kLab1)), r, 1e-15);
  EXPECT_NEAR(std::abs(x(kBright, kLab0)), r, 1e-15);
  EXPECT_NEAR(std::abs(x(kBright, kLab1)), r, 1e-15);
  EXPECT_EQ(x(kTarget, kTarget), Complex(1.0));
  EXPECT_EQ(x(kUnwanted, kUnwanted), Complex(1.0));
}

TEST(CptTransformProperty, Unitary) {
  std::mt19937_64 rng(testing::kSeed + 1);
  std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
  for (int trial = 0; trial < 100; ++trial) {
    const Operator t = cpt_transform(angle(rng), angle(rng));
    EXPECT_LT(frobenius_deviation_from_identity(t * t.adjoint()), 1e-12);
  }
}

TEST(CptTransform, DarkStateIsUndrivenByEqualLegs) {
  // Lab drive with equal legs onto |t> couples only the bright combination.
  const SystemParams p = SystemParams::independent(1.0, 0.5, 0.0, 0.0);
  const PulsePlan plan = plan_for(p, Strategy::kUncorrected);
  const Operator h = lab_to_cpt(h_lab_interaction(p, plan, plan.t_g / 2));
  EXPECT_LT(std::abs(h(kDark, kTarget)), 1e-15);
  EXPECT_GT(std::abs(h(kBright, kTarget)), 0.1);
}

TEST(HCpt, ZeroPatterns) {
  const SystemParams opposite = SystemParams::independent(2.0, 0.5, -0.7, 0.7);
  const SystemParams equal = SystemParams::independent(2.0, 0.5, 1.1, 1.1);
  const PulsePlan po = plan_for(opposite, Strategy::kDrag);
  const PulsePlan pe = plan_for(equal, Strategy::kDrag);
  for (double t : {0.0, 7.0, 16.0, 25.0, 32.0}) {
    EXPECT_EQ(h_cpt(opposite, po, t)(kBright, kUnwanted), Complex(0.0));
    EXPECT_EQ(h_cpt(equal, pe, t)(kDark, kUnwanted), Complex(0.0));
  }
}

TEST(HCpt, DriveOffIsDiagonal) {
  const SystemParams p = SystemParams::independent(2.0, 0.5, 1.0, 1.0);
  PulsePlan plan = plan_for(p, Strategy::kUncorrected);
  plan.rabi_scale = 0.0;
  const double d = plan.delta;
  const Operator h = h_cpt(p, plan, 3.0);
  EXPECT_LT(max_entry_diff(h, Operator::diagonal({d / 2, d / 2, -d / 2, -d / 2 + 2.0})), 1e-15);
}

TEST(HCpt, BrightTargetElement) {
  const SystemParams p = SystemParams::independent(2.0, 0.5, 1.2, 0.8);
  const PulsePlan plan = plan_for(p, Strategy::kDrag);
  for (double t : {3.0, 16.0, 21.0}) {
    const Complex expected = Complex(plan.omega_o(t), -plan.omega_c(t)) / std::sqrt(2.0);
    EXPECT_LT(std::abs(h_cpt(p, plan, t)(kBright, kTarget) - expected), 1e-15);
  }
}

TEST(HCpt, QuarterTurnDependentCouplingsSplitIntoTwoBlocks) {
  const SystemParams p = SystemParams::dependent(1.0, 0.4, kPi / 4);
  const PulsePlan plan = plan_for(p, Strategy::kExact);
  for (double t : {0.0, 10.0, 20.0, 33.0, 40.0}) {
    const Operator h = h_cpt(p, plan, t);
    for (std::size_t a : {kBright, kTarget}) {
      for (std::size_t b : {kDark, kUnwanted}) {
        EXPECT_EQ(h(a, b), Complex(0.0)) << a << "," << b;
        EXPECT_EQ(h(b, a), Complex(0.0)) << b << "," << a;
      }
    }
  }
}

TEST(BuildersProperty, HermitianAtRandomTimes) {
  std::mt19937_64 rng(testing::kSeed + 2);
  SystemParams p = SystemParams::independent(1.0, 0.3, 1.2, 0.8);
  p.omega_s = 0.05;
  const PulsePlan plan = plan_for(p, Strategy::kDrag);
  std::uniform_real_distribution<double> time(0.0, plan.t_g);
  for (int trial = 0; trial < 100; ++trial) {
    const double t = time(rng);
    EXPECT_LT(h_cpt(p, plan, t).hermiticity_error(), 1e-12);
    EXPECT_LT(h_lab_interaction(p, plan, t).hermiticity_error(), 1e-12);
    EXPECT_LT(h_crosstalk(p, plan, t).hermiticity_error(), 1e-12);
    EXPECT_LT(s1_generator(p, plan, t).hermiticity_error(), 1e-12);
    EXPECT_LT(drag_frame_hamiltonian(p, plan, t).hermiticity_error(), 1e-12);
  }
}

TEST(HLabInteraction, DriveOffIsZero) {
  const SystemParams p = SystemParams::independent(1.0, 0.5, 1.0, 1.0);
  PulsePlan plan = plan_for(p, Strategy::kUncorrected);
  plan.rabi_scale = 0.0;
  EXPECT_EQ(h_lab_interaction(p, plan, 4.0).max_abs(), 0.0);
}

// Pointwise oracle: with psi_rot = F(t) T psi_int, the rotating CPT-frame
// generator is F T H_int T^dagger F^dagger + diag(rates).
TEST(HLabInteraction, ConjugatesIntoHcpt) {
  std::mt19937_64 rng(testing::kSeed + 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const SystemParams p = SystemParams::independent(0.5 + u(rng), 0.1 + 0.4 * u(rng), 2 * u(rng) - 1, 2 * u(rng));
    const PulsePlan plan = plan_for(p, trial % 2 == 0 ? Strategy::kDrag : Strategy::kUncorrected);
    const auto a = rotating_frame_rates(plan.delta, p.eps);
    for (int k = 0; k < 5; ++k) {
      const double t = u(rng) * plan.t_g;
      const Operator f = rotating_frame(plan.delta, p.eps, t);
      const Operator mapped = f * lab_to_cpt(h_lab_interaction(p, plan, t)) * f.adjoint() +
                              Operator::diagonal({a[0], a[1], a[2], a[3]});
      EXPECT_LT(max_entry_diff(mapped, h_cpt(p, plan, t)), 1e-10);
    }
  }
}

TEST(HLabInteractionProperty, PropagationAgreesWithCptFrame) {
  std::mt19937_64 rng(testing::kSeed + 4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Operator t_map = cpt_transform(kHalfPi, 0.0);
  for (int trial = 0; trial < 10; ++trial) {
    const SystemParams p = SystemParams::independent(1.0, 0.2 + 0.3 * u(rng), 2 * u(rng) - 1, 2 * u(rng));
    const PulsePlan plan = plan_for(p, Strategy::kUncorrected);
    const TimeGrid grid = TimeGrid::over(plan.t_g, 1u << 14);
    const Operator u_lab =
        *propagate_unitary([&](double t) { return h_lab_interaction(p, plan, t); }, grid).final_operator;
    const Operator u_cpt = *propagate_unitary([&](double t) { return h_cpt(p, plan, t); }, grid).final_operator;
    const Operator mapped = rotating_frame(plan.delta, p.eps, plan.t_g) * t_map * u_lab * t_map.adjoint();
    for (std::size_t k : {kDark, kBright}) {
      const StateVector psi = StateVector::basis(4, k);
      const double overlap = std::abs(inner(mapped * psi, u_cpt * psi));
      EXPECT_GT(overlap, 1.0 - 1e-8) << "trial " << trial;
    }
  }
}

TEST(HLabInteraction, DegenerateLevelsGiveProportionalColumns) {
  const SystemParams p = SystemParams::independent(1e-13, 0.5, 0.7, 0.7);
  const PulsePlan plan = plan_for(p, Strategy::kUncorrected);
  for (double t : {2.0, 9.0, 17.0}) {
    const Operator h = h_lab_interaction(p, plan, t);
    for (std::size_t j : {kLab0, kLab1}) {
      EXPECT_LT(std::abs(h(j, kUnwanted) - 0.7 * h(j, kTarget)), 1e-9);
    }
  }
}

TEST(HCrosstalk, ZeroKappaReducesToHcpt) {
  SystemParams p = SystemParams::independent(1.0, 0.3, 1.2, 0.8);
  p.omega_s = 0.01;
  p.kappa01 = 0.0;
  p.kappa10 = 0.0;
  const PulsePlan plan = plan_for(p, Strategy::kDrag);
  for (double t : {0.0, 11.0, 26.6, 40.0}) {
    EXPECT_LT(max_entry_diff(lab_to_cpt(h_crosstalk(p, plan, t)), h_cpt(p, plan, t)), 1e-14);
  }
}

TEST(HCrosstalk, CptImageHasCosineAndSineModulations) {
  SystemParams p = SystemParams::dependent(1.0, 0.3, kPi / 4);
  p.omega_s = 0.07;
  const PulsePlan plan = plan_for(p, Strategy::kUncorrected);
  for (double t : {3.0, 12.5, 26.0, 44.0}) {
    const Operator h = lab_to_cpt(h_crosstalk(p, plan, t));
    const double w = std::abs(plan.omega_o(t)) / std::sqrt(2.0);
    const double c = 1.0 + std::cos(p.omega_s * t);
    const double s = std::abs(std::sin(p.omega_s * t));
    EXPECT_NEAR(std::abs(h(kBright, kTarget)), w * c, 1e-14);
    EXPECT_NEAR(std::abs(h(kDark, kUnwanted)), w * c, 1e-14);
    EXPECT_NEAR(std::abs(h(kDark, kTarget)), w * s, 1e-14);
    EXPECT_NEAR(std::abs(h(kBright, kUnwanted)), w * s, 1e-14);
  }
}

TEST(HCrosstalk, SlowCrosstalkWithHalvedRabiApproachesHcpt) {
  SystemParams p = SystemParams::independent(1.0, 0.3, 1.0, 1.0);
  p.omega_s = 1e-9;
  PulsePlan plan = plan_for(p, Strategy::kUncorrected);
  const PulsePlan full = plan;
  plan.rabi_scale = 0.5;
  for (double t : {5.0, 26.0, 50.0}) {
    EXPECT_LT(max_entry_diff(lab_to_cpt(h_crosstalk(p, plan, t)), h_cpt(p, full, t)), 1e-8);
  }
}

TEST(HDragOrders, Examples) {
  SystemParams p = SystemParams::independent(2.0, 0.5, 1.0, 1.0);
  p.delta = -0.3;
  const double t = 13.0;
  const double om = sech_envelope(0.5, p.t_g, t);
  const DragOrders v = h_drag_orders(p, t);
  EXPECT_LT(max_entry_diff(v.h1, Operator::diagonal({0.0, -om * om / 8.0, -om * om / 8.0})), 1e-16);
  EXPECT_DOUBLE_EQ(v.h0(1, 2).real(), om);
  EXPECT_DOUBLE_EQ(v.h0(0, 0).real(), -0.15);

  SystemParams opposite = SystemParams::independent(2.0, 0.5, -0.6, 0.6);
  const DragOrders o = h_drag_orders(opposite, t);
  EXPECT_EQ(o.h1(1, 1), Complex(0.0));
  EXPECT_EQ(o.h1(2, 2), Complex(0.0));

  SystemParams equal = SystemParams::independent(2.0, 0.5, 1.3, 1.3);
  EXPECT_EQ(h_drag_orders(equal, t).h1(0, 1), Complex(0.0));
}

TEST(S1Generator, SmallAtWindowEdges) {
  const SystemParams p = SystemParams::independent(1.0, 0.4, 1.2, 0.8);
  const PulsePlan plan = plan_for(p, Strategy::kDrag);
  for (double t : {0.0, plan.t_g}) EXPECT_LE(s1_generator(p, plan, t).norm(), 1e-3 * plan.t_g * p.sigma);
}

TEST(S1Generator, SparsityFollowsCouplings) {
  const SystemParams equal = SystemParams::independent(1.0, 0.4, 1.2, 1.2);
  const SystemParams opposite = SystemParams::independent(1.0, 0.4, -1.2, 1.2);
  const PulsePlan pe = plan_for(equal, Strategy::kDrag);
  const PulsePlan po = plan_for(opposite, Strategy::kDrag);
  const Operator se = s1_generator(equal, pe, pe.t_g / 2);
  const Operator so = s1_generator(opposite, po, po.t_g / 2);
  EXPECT_EQ(se(kDark, kUnwanted), Complex(0.0));
  EXPECT_GT(std::abs(se(kBright, kUnwanted)), 0.0);
  EXPECT_EQ(so(kBright, kUnwanted), Complex(0.0));
  EXPECT_GT(std::abs(so(kDark, kUnwanted)), 0.0);
}

double mean_block_norm(double ratio) {
  const SystemParams p = SystemParams::independent(1.0, ratio, 1.2, 0.8);
  const PulsePlan plan = plan_for(p, Strategy::kDrag);
  constexpr int kSamples = 400;
  double sum = 0.0;
  for (int k = 0; k < kSamples; ++k) {
    const double t = (k + 0.5) * plan.t_g / kSamples;
    sum += qubit_unwanted_block_norm(drag_frame_hamiltonian(p, plan, t));
  }
  return sum / kSamples;
}

TEST(DragFrameProperty, ResidualCouplingIsSecondOrder) {
  for (double r : {0.4, 0.2, 0.1}) {
    const double ratio = mean_block_norm(r) / mean_block_norm(r / 2);
    EXPECT_GE(ratio, 3.5) << "sigma/eps " << r;
  }
}

TEST(LindbladGenerators, Examples) {
  for (const Operator& l : lindblad_generators(0.0)) EXPECT_EQ(l.max_abs(), 0.0);
  const double gamma = 0.02;
  Operator sum(4);
  for (const Operator& l : lindblad_generators(gamma)) {
    int nonzero = 0;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c)
        if (l(r, c) != Complex(0.0)) {
          ++nonzero;
          EXPECT_DOUBLE_EQ(l(r, c).real(), std::sqrt(gamma));
        }
    EXPECT_EQ(nonzero, 1);
    sum += l.adjoint() * l;
  }
  EXPECT_LT(max_entry_diff(sum, Operator::diagonal({0.0, 0.0, 2 * gamma, 2 * gamma})), 1e-16);
  EXPECT_THROW(lindblad_generators(-1.0), DesignError);
}

}  // namespace
}  // namespace cptgate
