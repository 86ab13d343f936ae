#include <gtest/gtest.h>

#include "oracles.hpp"
#include "richter/models.hpp"
#include "richter/sampling.hpp"
#include "richter/verification.hpp"

using namespace richter;
using namespace richter::verification;

namespace {

double hencky_energy(double lambda, double mu, const SymTensor& l) {
  const double j = trace(l);
  return 0.5 * lambda * j * j + mu * contract(l, l);
}

CheckConfig quick(int trials = 10) {
  CheckConfig c;
  c.trials = trials;
  c.segments = 100;
  return c;
}

}  // namespace

TEST(StrainPath, NeedsEvenSegments) {
  EXPECT_THROW(StrainPath(SymTensor{}, SymTensor{}, 3), std::invalid_argument);
  EXPECT_THROW(StrainPath(SymTensor{}, SymTensor{}, 0), std::invalid_argument);
  const StrainPath p(SymTensor::diag(0, 0, 0), SymTensor::diag(1, 2, 3), 4);
  EXPECT_LT(oracle::max_abs_diff(p.at(0.5), SymTensor::diag(0.5, 1, 1.5)), 1e-15);
}

TEST(WorkIntegral, EqualsEnergyDifferenceForHencky) {
  auto rng = sampling::trial_rng(30, 0);
  const StressLaw law = HenckyLog{0.8, 1.4};
  for (int t = 0; t < 10; ++t) {
    const SymTensor a = sampling::random_in_ball(rng, 0.8);
    const SymTensor b = sampling::random_in_ball(rng, 0.8);
    const double w = work_integral(law, StrainPath(a, b, 400));
    EXPECT_NEAR(w, hencky_energy(0.8, 1.4, b) - hencky_energy(0.8, 1.4, a), 1e-12);
  }
  EXPECT_EQ(work_integral(law, StrainPath(SymTensor::diag(1, 0, 0), SymTensor::diag(1, 0, 0), 2)), 0.0);
}

TEST(Hyperelasticity, EnergiesAndLogLawPass) {
  for (const EnergyModel& m : models::builtin_energies()) {
    EXPECT_TRUE(hyperelasticity_check(FromEnergy{m}, quick()).passed) << m.name();
  }
  EXPECT_TRUE(hyperelasticity_check(HenckyLog{1, 1}, quick()).passed);
  EXPECT_TRUE(hyperelasticity_check(HookeLinear{2, 1}, quick()).passed);
}

TEST(Hyperelasticity, HookeWithIndependentLameConstantsFails) {
  const CheckReport r = hyperelasticity_check(HookeLinear{1, 1}, quick());
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.status, Status::Fail);
  EXPECT_GT(r.residual, 1e-2);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_NE(r.witness->find("loop_work"), std::string::npos);
}

TEST(Integrability, ResidualIsTheLameMismatch) {
  for (double lambda : {0.5, 1.0, 2.0, 3.0}) {
    const CheckReport r = integrability_check(models::non_integrable_hooke(lambda, 1.0), quick());
    EXPECT_NEAR(r.residual, std::abs(lambda - 2.0), 1e-6) << lambda;
    EXPECT_EQ(r.passed, lambda == 2.0);
  }
}

TEST(Integrability, StretchCoefficientsOfAnEnergyAreIntegrable) {
  for (const EnergyModel& m : models::builtin_energies()) {
    const CheckReport r = integrability_check(stretch_coefficients(m), quick());
    EXPECT_TRUE(r.passed) << m.name() << " residual " << r.residual;
  }
}

TEST(Integrability, RejectsLogBasis) {
  CoefficientForm f = models::non_integrable_hooke(1, 1);
  f.basis = Basis::Log;
  EXPECT_THROW(integrability_check(f, quick()), std::invalid_argument);
}

TEST(Decomposability, VerdictsOnBuiltins) {
  for (const EnergyModel& m : models::builtin_energies()) {
    const CheckReport r = decomposability_check(m, quick(50));
    if (m.declared_decomposable()) EXPECT_TRUE(r.passed) << m.name() << " " << r.residual;
  }
  // W = c j y: W_jy = c everywhere.
  const CheckReport coupled = decomposability_check(models::coupled_volume_shape(2.0), quick(200));
  EXPECT_FALSE(coupled.passed);
  EXPECT_LE(coupled.residual, 2.0);
  EXPECT_GT(coupled.residual, 2.0 / 1.6);
  // RichterIntro mixes volume and shape through det V * tr V.
  EXPECT_FALSE(decomposability_check(models::richter_intro(1.0), quick()).passed);
}

TEST(MeanStress, AgreesWithDecomposability) {
  for (const EnergyModel& m : models::builtin_energies()) {
    EXPECT_EQ(mean_stress_check(m, quick()).passed, decomposability_check(m, quick()).passed) << m.name();
  }
}

TEST(Inequalities, IntroSatisfiesBakerEricksenAndTensionExtension) {
  const auto reports = inequality_suite(models::richter_intro(1.0), quick(50));
  ASSERT_EQ(reports.size(), 4u);
  EXPECT_EQ(reports[0].name, "empirical_I1");
  EXPECT_EQ(reports[1].name, "empirical_I2");
  EXPECT_EQ(reports[2].name, "baker_ericksen");
  EXPECT_EQ(reports[3].name, "tension_extension");
  EXPECT_TRUE(reports[2].passed);
  EXPECT_TRUE(reports[3].passed);
}

TEST(Inequalities, PurePressureSitsOnTheBakerEricksenBoundary) {
  const auto reports = inequality_suite(models::pressure_only(1.0), quick(20));
  EXPECT_EQ(reports[2].status, Status::Boundary);
  EXPECT_FALSE(reports[2].passed);
}

TEST(Inequalities, NegativeShearModulusViolatesBakerEricksen) {
  const auto reports = inequality_suite(models::hencky_quadratic(1.0, -1.0), quick(20));
  EXPECT_EQ(reports[2].status, Status::Fail);
  EXPECT_GT(reports[2].residual, 1e-3);
}

TEST(Domain, RandomStatesAndTheBoundaryFamily) {
  auto rng = sampling::trial_rng(31, 0);
  std::vector<StretchState> states;
  for (int t = 0; t < 1000; ++t) states.push_back(sampling::random_state(rng, 0.2, 5.0));
  states.push_back(StretchState::from_principal({1, 1, 1}));
  for (double a : {0.05, 0.4}) states.push_back(StretchState::from_principal({std::exp(2 * a), std::exp(-a), std::exp(-a)}));
  const CheckReport r = domain_check(states);
  EXPECT_TRUE(r.passed);
  EXPECT_NEAR(r.residual, 1.0 / 6, 1e-12);
}

TEST(Checks, DeterministicForAFixedSeed) {
  const CheckReport a = hyperelasticity_check(HookeLinear{1, 1}, quick(5));
  const CheckReport b = hyperelasticity_check(HookeLinear{1, 1}, quick(5));
  EXPECT_EQ(a.residual, b.residual);
  EXPECT_EQ(a.witness, b.witness);
  CheckConfig other = quick(5);
  other.seed = 7;
  EXPECT_NE(hyperelasticity_check(HookeLinear{1, 1}, other).residual, a.residual);
}

TEST(Checks, ToleranceOverride) {
  CheckConfig c = quick(5);
  c.tolerance = 10.0;
  const CheckReport r = hyperelasticity_check(HookeLinear{1, 1}, c);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.tolerance, 10.0);
}
