#pragma once

#include <vector>

#include "nlqm/oscillator_lab.hpp"

namespace nlqm::gcs {

// First-order coset coordinates; θ_μ for μ ≥ 2 are cyclic and dropped.
struct GcsPoint {
  Complex alpha{};
  Complex theta0{};
  Complex theta1{};
};

struct SmallAmplitudeConstants {
  double w = 0.0;      // 4 e^{-4|β|²} (1 - 4|β|²)
  double p = 0.0;      // 16 |β|² e^{-4|β|²}
  double kappa = 0.0;  // 4 |β| e^{-4|β|²}
};

SmallAmplitudeConstants small_amplitude_constants(double beta_abs);

// ∫ dμ(α) α*^ν α e^{-α*(bα - c)} = (c δ_{ν0} + δ_{ν1}) / (b+1)², dμ = e^{-|α|²} d²α/π.
Complex lemma_integral_closed(int nu, Complex b, Complex c);

struct QuadratureGrid {
  int radial = 96;    // Gauss-Legendre nodes on [0, R]
  int angular = 96;   // trapezoid nodes on [0, 2π)
  double tail = 1e-16;
};

struct QuadratureResult {
  Complex value{};
  double error_estimate = 0.0;  // |value - value at half resolution|
  double radius = 0.0;
  bool accurate = true;         // error_estimate below 1e-10 (scaled)
};

// Direct polar-coordinate evaluation of the defining plane integral.
QuadratureResult lemma_integral_quadrature(int nu, Complex b, Complex c,
                                           const QuadratureGrid& grid = {});

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// I_ν(1/2, -(α + 2β)).
Complex gcs_integral(int nu, Complex alpha, Complex beta);

GcsPoint hamilton_rhs(const GcsPoint& point, const oscillator_lab::OscillatorParams& params);

struct GcsTrajectory {
  std::vector<double> times;
  std::vector<GcsPoint> points;
};

// Classical RK4 on (α, θ₀, θ₁), sampled every step.
GcsTrajectory integrate_gcs(const GcsPoint& start, const oscillator_lab::OscillatorParams& params,
                            double T, double dt);

Complex small_amplitude_solution(Complex alpha0, const SmallAmplitudeConstants& consts,
                                 const oscillator_lab::OscillatorParams& params, double t);

enum class Regime { small, large };

// δω₀/ω₀.
double predicted_shift(Regime regime, const oscillator_lab::OscillatorParams& params, double alpha0);

struct ThetaPair {
  Complex theta0{};
  Complex theta1{};
};

ThetaPair theta_solutions(double t, Complex alpha0, Complex beta, double eps, double omega0);

struct FockComparison {
  double rms = 0.0;
  std::vector<double> times;
  std::vector<double> gcs_x;
  std::vector<double> fock_x;
};

// Re α(t) against <x(t)> of the displaced Fock run, started from <a> of the
// same initial state, on a shared grid.
FockComparison compare_with_fock(const oscillator_lab::OscillatorParams& params, double alpha0,
                                 double T, double dt);

}  // namespace nlqm::gcs
