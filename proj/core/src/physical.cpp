#include "nlqm/physical.hpp"

#include <cmath>
#include <numbers>

#include "nlqm/calibration.hpp"
#include "nlqm/errors.hpp"

namespace nlqm::physical {

namespace {

bool matches_quoted(double angular, double quoted) {
  const double tol = 0.05 * quoted;
  return std::abs(angular - quoted) <= tol ||
         std::abs(angular / (2.0 * std::numbers::pi) - quoted) <= tol;
}

}  // namespace

void validate(const PhysicalScenario& s) {
  if (!(s.R1 > 0.0 && s.R2 > 0.0 && s.r > 0.0 && s.delta_x > 0.0)) {
    throw ConfigError("scenario: lengths must be positive");
  }
  if (!(s.rho > 0.0)) throw ConfigError("scenario: density must be positive");
  if (!(s.eps_d > 1.0)) throw ConfigError("scenario: dielectric constant must exceed 1");
  if (s.r < s.R1 + s.R2) throw ConfigError("scenario: spheres overlap (r < R1 + R2)");
  if (!(s.n_th >= 0.0)) throw ConfigError("scenario: n_th must be non-negative");
}

PhysicalScenario diamond_scenario() {
  PhysicalScenario s;
  s.R1 = s.R2 = 1.307e-6;
  s.rho = 3.51e3;
  s.r = s.delta_x = 200e-6;
  s.eps_d = 5.7;
  s.n_th = 0.0;
  return s;
}

double sphere_mass(double R, double rho) {
  if (!(R > 0.0) || !(rho > 0.0)) throw DomainError("sphere_mass: R and rho must be positive");
  return rho * (4.0 / 3.0) * std::numbers::pi * R * R * R;
}

double gravitational_rate(double M1, double M2, double r) {
  if (!(r > 0.0)) throw DomainError("gravitational_rate: r must be positive");
  return constants::G * M1 * M2 / (constants::hbar * r);
}

double casimir_rate(double R1, double R2, double r, double eps_d) {
  if (!(r > 0.0)) throw DomainError("casimir_rate: r must be positive");
  if (eps_d < 1.0) throw DomainError("casimir_rate: eps_d below 1");
  const double k = (eps_d - 1.0) / (eps_d + 2.0);
  return 23.0 * constants::c * std::pow(R1, 3) * std::pow(R2, 3) /
         (4.0 * std::numbers::pi * std::pow(r, 7)) * k * k;
}

std::optional<double> required_epsilon(double omega_g, double omega_c, double a1, double a2) {
  if (!(omega_g > 0.0) || !(omega_c > 0.0)) {
    throw DomainError("required_epsilon: rates must be positive");
  }
  if (omega_c >= omega_g) return std::nullopt;
  return omega_g * calibration::epsilon_star_model(omega_c / omega_g, a1, a2);
}

double measurement_budget(double n_th, double alpha0) {
  if (!(alpha0 > 0.0)) throw DomainError("measurement_budget: alpha0 must be positive");
  if (n_th < 0.0) throw DomainError("measurement_budget: n_th must be non-negative");
  return (n_th + 1.0) * (n_th + 1.0) / (alpha0 * alpha0);
}

ScenarioReport evaluate(const PhysicalScenario& s, double a1, double a2) {
  validate(s);
  ScenarioReport rep;
  rep.scenario = s;
  rep.M1 = sphere_mass(s.R1, s.rho);
  rep.M2 = sphere_mass(s.R2, s.rho);
  rep.omega_g = gravitational_rate(rep.M1, rep.M2, s.r);
  rep.omega_c = casimir_rate(s.R1, s.R2, s.r, s.eps_d);
  rep.g = rep.omega_c / rep.omega_g;
  rep.eps_required = required_epsilon(rep.omega_g, rep.omega_c, a1, a2);
  rep.eps_star_quoted_g = calibration::epsilon_star_model(kQuotedOmegaC / kQuotedOmegaG, a1, a2);
  rep.eps_required_quoted_g = rep.omega_g * rep.eps_star_quoted_g;
  rep.omega_g_mismatch = !matches_quoted(rep.omega_g, kQuotedOmegaG);
  rep.omega_c_mismatch = !matches_quoted(rep.omega_c, kQuotedOmegaC);
  rep.measurements = measurement_budget(s.n_th, 1.0);
  return rep;
}

}  // namespace nlqm::physical
