#pragma once

#include <iosfwd>
#include <vector>

#include "nlqm/dynamics.hpp"

namespace nlqm::qubit_lab {

// E_{(g,ε)}(t) sampled on a uniform grid.
struct EntanglementCurve {
  double g = 0.0;
  double eps = 0.0;
  double dt = 0.0;
  std::vector<double> times;
  std::vector<double> entropies;
  double max_norm_drift = 0.0;
  double max_energy_drift = 0.0;  // absolute, max |h(t) - h(0)|
  double initial_energy = 0.0;
};

// (|0>+|1>) ⊗ (|0>+|1>) / 2.
StateVector initial_cat_product();

// |01><01| + |10><10|.
ComplexMatrix build_interaction();

// Local ε <σ_y>² on each qubit, coupling g·H_int.
dynamics::BipartiteSpec make_spec(double g, double eps);

EntanglementCurve entanglement_curve(double g, double eps, double T, double dt,
                                     dynamics::Method method = dynamics::Method::trotter);

double binary_entropy(double p);

// H₂((1 + |cos gt|)/2).
double analytic_linear_entropy(double g, double t);

// ½(|00> + e^{igt}(|01> + |10>) + |11>), the exact ε = 0 state up to a global phase.
StateVector analytic_linear_state(double g, double t);

// Time of the first local maximum of E, refined by a parabola through the
// neighbouring samples. Throws InsufficientData if the curve has none.
double first_maximum_time(const EntanglementCurve& curve);

void write_csv(std::ostream& os, const EntanglementCurve& curve);

}  // namespace nlqm::qubit_lab
