#pragma once

#include <numbers>
#include <vector>

#include "nlqm/dynamics.hpp"

namespace nlqm::oscillator_lab {

// h = ω₀ <a†a> + ε <Y>², Y = D†(β) P D(β).
struct OscillatorParams {
  double omega0 = 1.0;
  double eps = 0.02;
  Complex beta{0.0, std::numbers::pi / 4.0};
  algebra::FockConfig fock{64, 4.5};
};

// Throws ConfigError on ω₀ ≤ 0, ε < 0; TruncationError if |β| > α_max.
void validate(const OscillatorParams& params);
// ε/ω₀ ≤ 1.
bool perturbative(const OscillatorParams& params);

ComplexMatrix build_Y(const OscillatorParams& params);
dynamics::HamiltonianSpec make_spec(const OscillatorParams& params);
dynamics::HamiltonianSpec make_spec(const OscillatorParams& params, const ComplexMatrix& y);

// 4β (ε/ω₀) e^{-4|β|²}.
Complex vacuum_amplitude_prediction(const OscillatorParams& params);

struct GroundState {
  StateVector psi;
  double energy = 0.0;
  int iterations = 0;
  double gradient_norm = 0.0;
};

// Projected gradient descent on the unit sphere from coherent(α_v).
GroundState ground_state(const OscillatorParams& params, int max_iterations = 100000);

// Re <a>.
double position(const StateVector& psi);

struct DisplacedRun {
  std::vector<double> times;
  std::vector<double> x;
  double max_norm_drift = 0.0;
  double max_energy_drift = 0.0;
  double initial_energy = 0.0;
};

// D(α₀) applied to the ground state, then the nonlinear flow with the Lawson
// RK4 integrator. Pass a precomputed ground state to skip the solve.
DisplacedRun displaced_run(const OscillatorParams& params, double alpha0, double T, double dt,
                           const GroundState* ground = nullptr);

enum class EstimatorMethod { sinusoid_fit, zero_crossing };

struct FrequencyMeasurement {
  double omega = 0.0;
  double uncertainty = 0.0;
  EstimatorMethod method = EstimatorMethod::sinusoid_fit;
};

// Least-squares fit of c + A cos ωt + B sin ωt seeded by zero crossings.
FrequencyMeasurement estimate_frequency(const std::vector<double>& times,
                                        const std::vector<double>& x);

struct ShiftPoint {
  double alpha0 = 0.0;
  double omega = 0.0;
  double omega_err = 0.0;
  double normalized_shift = 0.0;  // (ω - ω₀)/ε
};

inline double default_T(double omega0) { return 20.0 * 2.0 * std::numbers::pi / omega0; }
inline double default_dt(double omega0) { return 2.0 * std::numbers::pi / (omega0 * 400.0); }

// 0.05 and 2·2^{-k/2}, k = 0..10, ascending.
std::vector<double> default_alpha0_grid();

std::vector<ShiftPoint> frequency_shift_curve(const OscillatorParams& params,
                                              const std::vector<double>& alpha0_grid, double T,
                                              double dt, int threads = 1);

}  // namespace nlqm::oscillator_lab
