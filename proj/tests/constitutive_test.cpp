#include <gtest/gtest.h>

#include "oracles.hpp"
#include "richter/constitutive.hpp"
#include "richter/models.hpp"
#include "richter/sampling.hpp"

using namespace richter;
using oracle::M;

namespace {

struct EnergyOracle {
  std::string name;
  std::function<long double(const M& l)> w;  // energy as a function of the full log stretch
};

long double det_v(const M& l) { return std::exp(oracle::trace(l)); }

std::vector<EnergyOracle> energy_oracles() {
  return {
      {"HenckyQuadratic",
       [](const M& l) { return 0.5L * oracle::trace(l) * oracle::trace(l) + oracle::trace(oracle::mul(l, l)); }},
      {"HenckyQuadraticDeviatoric",
       [](const M& l) { return 0.5L * oracle::trace(l) * oracle::trace(l) + oracle::trace(oracle::mul(l, l)); }},
      {"RichterIntro",
       [](const M& l) {
         const M v = oracle::expm(l);
         return 2 * det_v(l) * (oracle::trace(v) - 4);
       }},
      {"ShieldDual",
       [](const M& l) {
         const M vinv = oracle::expm(oracle::scale(l, -1));
         return 2 * (oracle::trace(vinv) - 4);
       }},
      {"PressureOnly",
       [](const M& l) {
         const long double d = det_v(l) - 1;
         return 0.5L * d * d;
       }},
      {"CoupledVolumeShape",
       [](const M& l) {
         const long double j = oracle::trace(l);
         return j * (oracle::trace(oracle::mul(l, l)) - j * j / 3);
       }},
  };
}

// Cauchy stress as e^-j dW/dL with the derivative taken numerically.
SymTensor oracle_stress(const EnergyOracle& o, const SymTensor& l) {
  return oracle::sym_gradient(o.w, oracle::from(l)) * std::exp(-trace(l));
}

double rel_err(const SymTensor& a, const SymTensor& b) {
  return oracle::max_abs_diff(a, b) / std::max(1.0, oracle::max_abs(b));
}

}  // namespace

TEST(StressFromEnergy, MatchesDerivativeOfEnergyInLogStretch) {
  auto rng = sampling::trial_rng(20, 0);
  for (const EnergyOracle& o : energy_oracles()) {
    const EnergyModel m = models::make_energy(o.name);
    for (int t = 0; t < 30; ++t) {
      const StretchState s = StretchState::from_log(sampling::random_in_ball(rng, 0.9));
      const SymTensor ref = oracle_stress(o, s.L());
      EXPECT_LT(rel_err(stress_from_energy(m, s, 0.0).sigma, ref), 1e-9) << o.name << " trial " << t;
    }
  }
}

TEST(StressFromEnergy, AllCoordinateSystemsAgree) {
  auto rng = sampling::trial_rng(21, 0);
  for (const EnergyModel& base : models::builtin_energies()) {
    const EnergyModel jkl = convert_model(base, Coordinates::JKL);
    const EnergyModel jyz = convert_model(base, Coordinates::JYZ);
    const EnergyModel i123 = convert_model(base, Coordinates::I123);
    for (int t = 0; t < 30; ++t) {
      const StretchState s = sampling::random_state(rng, 0.4, 2.5, 0.02);
      const SymTensor ref = stress_from_energy(base, s, 0.0).sigma;
      EXPECT_LT(rel_err(stress_from_energy_jkl(jkl, s, 0.0).sigma, ref), 1e-8) << base.name();
      EXPECT_LT(rel_err(stress_from_energy_jyz(jyz, s, 0.0).sigma, ref), 1e-8) << base.name();
      EXPECT_LT(rel_err(stress_from_energy_I(i123, s, 0.0).sigma, ref), 1e-8) << base.name();
      const InvariantSet inv = invariants(s);
      EXPECT_NEAR(jyz.evaluate(inv, 0.0), base.evaluate(inv, 0.0), 1e-10 * (1 + std::abs(base.evaluate(inv, 0.0))));
    }
  }
}

TEST(StressFromEnergy, RejectsMismatchedCoordinates) {
  const StretchState s = StretchState::from_principal({1.1, 0.9, 1.0});
  EXPECT_THROW(stress_from_energy_jkl(models::richter_intro(1.0), s, 0.0), std::invalid_argument);
  EXPECT_THROW(stress_from_energy_I(models::hencky_quadratic(1, 1), s, 0.0), std::invalid_argument);
  EXPECT_THROW(stress_from_energy_jyz(models::hencky_quadratic(1, 1), s, 0.0), std::invalid_argument);
}

TEST(StressFromEnergy, NonFiniteEnergyIsADomainError) {
  const EnergyModel bad("LogOfShape", Coordinates::JYZ, [](const Coords& x, double) { return std::log(x[1] - 1.0); });
  EXPECT_THROW(stress_from_energy(bad, StretchState::from_principal({1.1, 0.9, 1.0}), 0.0), DomainError);
}

TEST(StressResult, Parts) {
  const SymTensor sigma{1, 2, 3, 0.1, 0.2, 0.3};
  const StressResult r = StressResult::from_cauchy(sigma, 0.2);
  EXPECT_DOUBLE_EQ(r.mean_stress, 2.0);
  EXPECT_LT(oracle::max_abs_diff(r.kirchhoff, sigma * std::exp(0.2)), 1e-15);
  EXPECT_LT(oracle::max_abs_diff(r.deviatoric + SymTensor::identity() * r.mean_stress, sigma), 1e-15);
}

TEST(DirectLaws, HookeAndHenckyClosedForms) {
  auto rng = sampling::trial_rng(22, 0);
  for (int t = 0; t < 50; ++t) {
    const StretchState s = sampling::random_state(rng, 0.3, 3.0);
    const SymTensor e = s.V() - SymTensor::identity();
    const SymTensor hooke = SymTensor::identity() * (0.7 * trace(e)) + e * 2.6;
    EXPECT_LT(oracle::max_abs_diff(stress_hooke(0.7, 1.3, s).sigma, hooke), 1e-13);
    const double j = trace(s.L());
    const SymTensor hencky = (SymTensor::identity() * (0.7 * j) + s.L() * 2.6) * std::exp(-j);
    EXPECT_LT(oracle::max_abs_diff(stress_hencky(0.7, 1.3, s).sigma, hencky), 1e-13);
  }
  EXPECT_THROW(stress_hencky(1.0, 0.0, StretchState::from_principal({1, 1, 1})), std::invalid_argument);
}

TEST(DirectLaws, IntroEnergyGivesHookeWithLambdaTwiceMu) {
  auto rng = sampling::trial_rng(23, 0);
  for (int t = 0; t < 50; ++t) {
    const StretchState s = sampling::random_state(rng, 0.3, 3.0);
    const SymTensor a = stress_from_energy(models::richter_intro(1.7), s, 0.0).sigma;
    const SymTensor b = stress_hooke(3.4, 1.7, s).sigma;
    EXPECT_LT(rel_err(a, b), 1e-12);
  }
}

TEST(StressLaw, VariantDispatch) {
  const StretchState s = StretchState::from_principal({1.2, 0.8, 1.05});
  const StressLaw hooke = HookeLinear{1.0, 1.0};
  EXPECT_EQ(oracle::max_abs_diff(evaluate(hooke, s, 0.0).sigma, stress_hooke(1, 1, s).sigma), 0.0);
  const StressLaw coeff = models::non_integrable_hooke(1.0, 1.0);
  EXPECT_LT(oracle::max_abs_diff(evaluate(coeff, s, 0.0).sigma, stress_hooke(1, 1, s).sigma), 1e-14);
  const StressLaw energy = FromEnergy{models::hencky_quadratic(1, 1)};
  EXPECT_LT(oracle::max_abs_diff(evaluate(energy, s, 0.0).sigma, stress_hencky(1, 1, s).sigma), 1e-14);
  EXPECT_EQ(law_name(energy), "HenckyQuadratic");
}

TEST(CentralGradient, Polynomial) {
  const EnergyModel::EnergyFn f = [](const Coords& x, double) { return x[0] * x[0] * x[1] + 3 * x[2]; };
  const Coords g = central_gradient(f, {1.5, -2.0, 0.5}, 0.0, 1e-6);
  EXPECT_NEAR(g[0], -6.0, 1e-8);
  EXPECT_NEAR(g[1], 2.25, 1e-8);
  EXPECT_NEAR(g[2], 3.0, 1e-8);
}

TEST(CentralGradient, OneSidedNearSingularity) {
  const EnergyModel::EnergyFn f = [](const Coords& x, double) { return x[0] > 0 ? std::sqrt(x[0]) : NAN; };
  const Coords g = central_gradient(f, {1e-7, 0, 0}, 0.0, 1e-6);
  EXPECT_TRUE(std::isfinite(g[0]));
}

TEST(Representation, MatchesTraceSystemOracle) {
  auto rng = sampling::trial_rng(24, 0);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 300; ++t) {
    const StretchState s = sampling::random_state(rng, 0.4, 2.5, 0.1);
    const SymTensor l = s.L();
    const SymTensor sigma = SymTensor::identity() * u(rng) + l * u(rng) + square(l) * u(rng);
    const Representation r = representation_solve(sigma, l);
    const auto ref = oracle::trace_system(oracle::from(sigma), oracle::from(l));
    EXPECT_EQ(r.order, 3);
    EXPECT_NEAR(r.f1, static_cast<double>(ref[0]), 1e-8 * (1 + std::abs(ref[0])));
    EXPECT_NEAR(r.f2, static_cast<double>(ref[1]), 1e-8 * (1 + std::abs(ref[1])));
    EXPECT_NEAR(r.f3, static_cast<double>(ref[2]), 1e-8 * (1 + std::abs(ref[2])));
  }
}

TEST(Representation, ReducedOrder) {
  const SymTensor l = SymTensor::diag(0.3, 0.3, -0.1);
  const SymTensor sigma = SymTensor::diag(2.0, 2.0, 5.0);
  const Representation r = representation_solve(sigma, l);
  EXPECT_EQ(r.order, 2);
  EXPECT_EQ(r.f3, 0.0);
  EXPECT_LT(oracle::max_abs_diff(SymTensor::identity() * r.f1 + l * r.f2, sigma), 1e-14);

  const Representation scalar = representation_solve(SymTensor::identity() * 4.0, SymTensor::identity() * 0.2);
  EXPECT_EQ(scalar.order, 1);
  EXPECT_DOUBLE_EQ(scalar.f1, 4.0);
}

TEST(Representation, RejectsNonCoaxialPairs) {
  const SymTensor l = SymTensor::diag(0.3, 0.1, -0.1);
  EXPECT_THROW(representation_solve(SymTensor{1, 1, 1, 0.5, 0, 0}, l), NotCoaxial);
  // coaxial but not constant on the repeated eigenspace of L
  EXPECT_THROW(representation_solve(SymTensor::diag(1, 2, 3), SymTensor::diag(0.2, 0.2, 0.5)), NotCoaxial);
}

TEST(ShieldTransform, DualOfIntroIsIntro) {
  auto rng = sampling::trial_rng(25, 0);
  const EnergyModel w = shield_transform(models::shield_dual(1.3));
  const EnergyModel intro = models::richter_intro(1.3);
  for (int t = 0; t < 50; ++t) {
    const StretchState s = sampling::random_state(rng, 0.3, 3.0);
    const InvariantSet inv = invariants(s);
    EXPECT_NEAR(w.evaluate(inv, 0.0), intro.evaluate(inv, 0.0), 1e-10 * (1 + std::abs(intro.evaluate(inv, 0.0))));
    EXPECT_LT(rel_err(stress_from_energy(w, s, 0.0).sigma, stress_from_energy(intro, s, 0.0).sigma), 1e-10);
  }
}

TEST(ShieldTransform, IsAnInvolutionInEveryCoordinateSystem) {
  auto rng = sampling::trial_rng(26, 0);
  for (const EnergyModel& base : models::builtin_energies()) {
    for (auto c : {Coordinates::JKL, Coordinates::JYZ, Coordinates::I123}) {
      const EnergyModel m = convert_model(base, c);
      const EnergyModel twice = shield_transform(shield_transform(m));
      for (int t = 0; t < 5; ++t) {
        const InvariantSet inv = invariants(sampling::random_state(rng, 0.5, 2.0));
        EXPECT_NEAR(twice.evaluate(inv, 0.0), m.evaluate(inv, 0.0), 1e-9 * (1 + std::abs(m.evaluate(inv, 0.0))))
            << base.name() << " " << to_string(c);
      }
    }
  }
}

TEST(ShieldTransform, MatchesDefinitionPointwise) {
  auto rng = sampling::trial_rng(27, 0);
  for (const EnergyModel& m : models::builtin_energies()) {
    const EnergyModel w = shield_transform(m);
    for (int t = 0; t < 10; ++t) {
      const Vec3 s = sampling::random_stretches(rng, 0.4, 2.5);
      const double expected = s[0] * s[1] * s[2] * m.energy_at_stretches({1 / s[0], 1 / s[1], 1 / s[2]}, 0.0);
      EXPECT_NEAR(w.energy_at_stretches(s, 0.0), expected, 1e-10 * (1 + std::abs(expected))) << m.name();
    }
  }
}

TEST(RebaseEnergy, StressIsUnchanged) {
  auto rng = sampling::trial_rng(28, 0);
  for (const EnergyModel& base : models::builtin_energies()) {
    const EnergyModel m = convert_model(base, Coordinates::JYZ);
    for (double j1 : {-0.3, 0.3}) {
      const EnergyModel shifted = rebase_energy(m, j1);
      for (int t = 0; t < 10; ++t) {
        const StretchState s = sampling::random_state(rng, 0.5, 2.0);
        const StressResult a = stress_from_energy(m, s, 0.0);
        const StressResult b = stress_from_energy(shifted, rebase(s, j1), 0.0);
        EXPECT_LT(rel_err(b.sigma, a.sigma), 1e-9) << base.name() << " j1=" << j1;
      }
    }
  }
  EXPECT_THROW(rebase_energy(models::hencky_quadratic(1, 1), 0.1), std::invalid_argument);
}

TEST(RebaseEnergy, ThermalExpansion) {
  const EnergyModel m =
      models::hencky_quadratic_deviatoric(1, 1).with_thermal_expansion([](double theta) { return 3e-5 * theta; });
  EXPECT_NEAR(reference_shift(m, 100.0), 3e-3, 1e-15);
  const EnergyModel shifted = rebase_energy(m, reference_shift(m, 100.0));
  EXPECT_NEAR(reference_shift(shifted, 100.0), 0.0, 1e-15);
  EXPECT_THROW(reference_shift(models::hencky_quadratic_deviatoric(1, 1), 1.0), std::invalid_argument);
}

TEST(EnergyModel, BuilderIsImmutable) {
  const EnergyModel a = models::hencky_quadratic(1, 1);
  const EnergyModel b = a.with_description("other").with_decomposable(false).with_fd_step(1e-5);
  EXPECT_TRUE(a.declared_decomposable());
  EXPECT_FALSE(b.declared_decomposable());
  EXPECT_EQ(b.fd_step(), 1e-5);
  EXPECT_EQ(a.fd_step(), EnergyModel::kDefaultFdStep);
}

TEST(EnergyModel, NumericGradientMatchesAnalytic) {
  const EnergyModel a = models::shield_dual(1.0);
  const EnergyModel n("ShieldDualNumeric", Coordinates::I123,
                      [a](const Coords& x, double theta) { return a.energy(x, theta); });
  const Coords x{3.2, 1.9, 1.1};
  const Coords ga = a.gradient(x, 0.0), gn = n.gradient(x, 0.0);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(ga[i], gn[i], 1e-8);
}
