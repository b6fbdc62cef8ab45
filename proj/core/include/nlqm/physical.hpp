#pragma once

#include <optional>

namespace nlqm::physical {

// CODATA 2018 recommended values (NIST SP 961, 2019).
namespace constants {
inline constexpr double G = 6.67430e-11;         // m³ kg⁻¹ s⁻²
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double c = 2.99792458e8;        // m s⁻¹, exact
}  // namespace constants

// SI units throughout; all rates are angular (rad/s).
struct PhysicalScenario {
  double R1 = 0.0;
  double R2 = 0.0;
  double rho = 0.0;
  double r = 0.0;
  double delta_x = 0.0;
  double eps_d = 0.0;
  double n_th = 0.0;
};

// Throws ConfigError unless lengths > 0, ε_d > 1, r ≥ R1 + R2, n_th ≥ 0.
void validate(const PhysicalScenario& s);

// Two diamond spheres: ε_d = 5.7, ρ = 3.51e3 kg/m³, R = 1.307 µm, r = Δx = 200 µm.
PhysicalScenario diamond_scenario();

// Rates quoted alongside the diamond inputs, unit unspecified.
inline constexpr double kQuotedOmegaG = 1.0;
inline constexpr double kQuotedOmegaC = 0.096;

double sphere_mass(double R, double rho);
// G M1 M2 / (ħ r).
double gravitational_rate(double M1, double M2, double r);
// 23 c R1³ R2³ / (4π r⁷) · ((ε_d - 1)/(ε_d + 2))².
double casimir_rate(double R1, double R2, double r, double eps_d);

// ω_g ε*(ω_c/ω_g); nullopt when ω_c ≥ ω_g (no boost needed).
std::optional<double> required_epsilon(double omega_g, double omega_c, double a1, double a2);

// (n_th + 1)² / α₀².
double measurement_budget(double n_th, double alpha0);

struct ScenarioReport {
  PhysicalScenario scenario;
  double M1 = 0.0;
  double M2 = 0.0;
  double omega_g = 0.0;
  double omega_c = 0.0;
  double g = 0.0;                        // ω_c / ω_g
  std::optional<double> eps_required;    // at the computed g, rad/s
  double eps_required_quoted_g = 0.0;    // at g = 0.096 with ω_g as computed, rad/s
  double eps_star_quoted_g = 0.0;        // ε*(0.096), dimensionless
  bool omega_g_mismatch = false;         // neither rad/s nor cycles/s within 5% of the quoted value
  bool omega_c_mismatch = false;
  double measurements = 0.0;             // budget at α₀ = 1
};

ScenarioReport evaluate(const PhysicalScenario& s, double a1, double a2);

}  // namespace nlqm::physical
