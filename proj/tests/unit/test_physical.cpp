#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "nlqm/calibration.hpp"
#include "nlqm/errors.hpp"
#include "nlqm/physical.hpp"

using namespace nlqm;
using namespace nlqm::physical;

TEST(Constants, Pinned) {
  EXPECT_EQ(constants::G, 6.67430e-11);
  EXPECT_EQ(constants::hbar, 1.054571817e-34);
  EXPECT_EQ(constants::c, 2.99792458e8);
}

TEST(SphereMass, Examples) {
  EXPECT_NEAR(sphere_mass(1.0, 1.0), 4.18879020478639, 1e-12);
  EXPECT_NEAR(sphere_mass(1.307e-6, 3.51e3), 3.283e-14, 1e-17);
  EXPECT_NEAR(sphere_mass(2.0, 1.7) / sphere_mass(1.0, 1.7), 8.0, 1e-14);
  EXPECT_THROW(sphere_mass(0.0, 1.0), DomainError);
}

TEST(GravitationalRate, Examples) {
  EXPECT_EQ(gravitational_rate(0.0, 0.0, 1.0), 0.0);
  const PhysicalScenario s = diamond_scenario();
  const double m = sphere_mass(s.R1, s.rho);
  EXPECT_NEAR(gravitational_rate(m, m, s.r), 3.41, 0.01);
  EXPECT_NEAR(gravitational_rate(2.0 * m, m, s.r) / gravitational_rate(m, m, s.r), 2.0, 1e-14);
  EXPECT_THROW(gravitational_rate(1.0, 1.0, 0.0), DomainError);
}

TEST(CasimirRate, Examples) {
  const PhysicalScenario s = diamond_scenario();
  EXPECT_EQ(casimir_rate(s.R1, s.R2, s.r, 1.0), 0.0);
  EXPECT_NEAR(casimir_rate(s.R1, s.R2, s.r, s.eps_d), 0.0796, 5e-4);
  EXPECT_NEAR(casimir_rate(s.R1, s.R2, s.r, s.eps_d) / casimir_rate(s.R1, s.R2, 2.0 * s.r, s.eps_d),
              128.0, 1e-10);
}

TEST(RequiredEpsilon, Examples) {
  const double eps = *required_epsilon(1.0, 0.096, calibration::kReferenceA1, calibration::kReferenceA2);
  EXPECT_NEAR(eps, 2.256, 0.005 * 2.256);
  EXPECT_FALSE(required_epsilon(1.0, 1.0, 4.587, 4.299).has_value());
  EXPECT_FALSE(required_epsilon(1.0, 2.0, 4.587, 4.299).has_value());
  EXPECT_LT(*required_epsilon(1.0, 1.0 - 1e-9, 4.587, 4.299), 1e-8);
  EXPECT_THROW(required_epsilon(1.0, 0.0, 4.587, 4.299), DomainError);
}

TEST(RequiredEpsilon, HomogeneousOfDegreeOneProperty) {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  std::uniform_real_distribution<double> lg(-3.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double wg = std::pow(10.0, lg(rng));
    const double wc = wg * u(rng);
    const double lambda = std::pow(10.0, lg(rng));
    const double e1 = *required_epsilon(wg, wc, 4.587, 4.299);
    const double e2 = *required_epsilon(lambda * wg, lambda * wc, 4.587, 4.299);
    EXPECT_NEAR(e2 / (lambda * e1), 1.0, 1e-12);
  }
}

TEST(MeasurementBudget, Examples) {
  EXPECT_EQ(measurement_budget(0.0, 1.0), 1.0);
  EXPECT_EQ(measurement_budget(9.0, 1.0), 100.0);
  EXPECT_NEAR(measurement_budget(0.0, 0.1), 100.0, 1e-12);
  EXPECT_THROW(measurement_budget(0.0, 0.0), DomainError);
}

TEST(Scenario, DiamondReportFlagsMismatch) {
  const ScenarioReport r = evaluate(diamond_scenario(), calibration::kReferenceA1, calibration::kReferenceA2);
  EXPECT_NEAR(r.M1, 3.2826e-14, 1e-17);
  EXPECT_NEAR(r.omega_g, 3.41, 0.01);
  EXPECT_NEAR(r.omega_c, 0.0796, 5e-4);
  EXPECT_TRUE(r.omega_g_mismatch);
  EXPECT_TRUE(r.omega_c_mismatch);
  EXPECT_NEAR(r.g, r.omega_c / r.omega_g, 1e-16);
  ASSERT_TRUE(r.eps_required.has_value());
  EXPECT_NEAR(r.eps_star_quoted_g, 2.256, 1e-3);
  EXPECT_NEAR(r.eps_required_quoted_g, r.omega_g * r.eps_star_quoted_g, 1e-12);
}

TEST(Scenario, Validation) {
  PhysicalScenario s = diamond_scenario();
  s.eps_d = 1.0;
  EXPECT_THROW(validate(s), ConfigError);
  s = diamond_scenario();
  s.r = 1e-6;
  EXPECT_THROW(validate(s), ConfigError);
  s = diamond_scenario();
  s.R1 = -1.0;
  EXPECT_THROW(validate(s), ConfigError);
}

TEST(Scenario, DimensionalAuditProperty) {
  std::mt19937_64 rng(47);
  std::uniform_real_distribution<double> lg(-1.0, 1.0);
  const PhysicalScenario s = diamond_scenario();
  const double m = sphere_mass(s.R1, s.rho);
  const double wg = gravitational_rate(m, m, s.r);
  const double wc = casimir_rate(s.R1, s.R2, s.r, s.eps_d);
  for (int trial = 0; trial < 100; ++trial) {
    const double l = std::pow(10.0, lg(rng));
    const double ml = sphere_mass(l * s.R1, s.rho);
    EXPECT_NEAR(gravitational_rate(ml, ml, l * s.r) / wg, std::pow(l, 5), 1e-12 * std::pow(l, 5));
    EXPECT_NEAR(casimir_rate(l * s.R1, l * s.R2, l * s.r, s.eps_d) / wc, 1.0 / l, 1e-12 / l);
  }
}

TEST(Scenario, BitReproducible) {
  const ScenarioReport a = evaluate(diamond_scenario(), 4.587, 4.299);
  const ScenarioReport b = evaluate(diamond_scenario(), 4.587, 4.299);
  EXPECT_EQ(a.omega_g, b.omega_g);
  EXPECT_EQ(a.omega_c, b.omega_c);
}
