#pragma once

#include <numbers>
#include <vector>

#include "nlqm/qubit_lab.hpp"

namespace nlqm::calibration {

// Reference fit coefficients of ε*(g) = (1-g)/(a1 g - a2 g²).
inline constexpr double kReferenceA1 = 4.587;
inline constexpr double kReferenceA2 = 4.299;

// (1/T) ∫ |E_a - E_b|² dt by the trapezoid rule, T the grid span.
double deviation(const qubit_lab::EntanglementCurve& a, const qubit_lab::EntanglementCurve& b);

struct SearchOptions {
  double lo = 0.0;
  double hi = 6.0;
  double tol = 1e-4;
  int scan_points = 32;
  double T = 2.0 * std::numbers::pi;
  double dt = 1e-3;
};

struct Probe {
  double eps = 0.0;
  double d = 0.0;
};

struct EpsilonStar {
  double g = 0.0;
  double eps_star = 0.0;
  double d_min = 0.0;
  bool boundary = false;  // minimum not bracketed in the interior of [lo, hi]
  std::vector<Probe> probes;
};

qubit_lab::EntanglementCurve reference_curve(const SearchOptions& options);

// Coarse scan, golden-section refinement of the best bracket, and the best
// probe overall as the result.
EpsilonStar find_epsilon_star(double g, const SearchOptions& options,
                              const qubit_lab::EntanglementCurve& reference);
EpsilonStar find_epsilon_star(double g, const SearchOptions& options = {});

struct RationalFit {
  double a1 = 0.0;
  double a2 = 0.0;
  double rms = 0.0;  // in the transformed variable (1-g)/ε*
};

// Least squares on the linear model (1-g)/ε* = a1 g - a2 g².
RationalFit fit_rational(const std::vector<double>& g, const std::vector<double>& eps_star);

double epsilon_star_model(double g, double a1, double a2);

// Root in (0, 1] of ε (a1 g - a2 g²) = 1 - g.
double g_star(double eps, double a1, double a2);

struct CalibrationResult {
  std::vector<double> g_grid;
  std::vector<EpsilonStar> points;
  RationalFit fit;
  std::vector<double> residuals;    // transformed variable, per grid point
  std::vector<double> roundtrip_g;  // g_star(ε*(g)) with the fitted coefficients
  std::vector<double> eps_star() const;
  bool any_boundary() const;
};

std::vector<double> default_g_grid();

CalibrationResult run_calibration(const std::vector<double>& g_grid, const SearchOptions& options,
                                  int threads = 1);

struct MimicryPoint {
  double eps = 0.0;
  double g = 0.0;
  double d = 0.0;
};

// d between E_{(g*(ε), ε)} and the reference for each ε.
std::vector<MimicryPoint> mimicry_curve(const std::vector<double>& eps_grid, double a1, double a2,
                                        const SearchOptions& options, int threads = 1);

}  // namespace nlqm::calibration
