#include "nlqm/qubit_lab.hpp"

#include <cmath>
#include <ostream>

#include "nlqm/errors.hpp"
#include "nlqm/io.hpp"

namespace nlqm::qubit_lab {

StateVector initial_cat_product() { return StateVector::Constant(4, Complex{0.5, 0.0}); }

ComplexMatrix build_interaction() {
  ComplexMatrix h = ComplexMatrix::Zero(4, 4);
  h(1, 1) = 1.0;
  h(2, 2) = 1.0;
  return h;
}

dynamics::BipartiteSpec make_spec(double g, double eps) {
  const ComplexMatrix zero = ComplexMatrix::Zero(2, 2);
  std::vector<dynamics::NonlinearTerm> terms;
  if (eps != 0.0) terms.push_back({eps, algebra::pauli_y()});
  dynamics::HamiltonianSpec local(zero, terms);
  return dynamics::BipartiteSpec(local, local, dynamics::Interaction{g, build_interaction()});
}

EntanglementCurve entanglement_curve(double g, double eps, double T, double dt,
                                     dynamics::Method method) {
  if (g < 0.0) throw ConfigError("entanglement_curve: g must be non-negative");
  if (eps < 0.0) throw ConfigError("entanglement_curve: eps must be non-negative");
  EntanglementCurve curve;
  curve.g = g;
  curve.eps = eps;
  curve.dt = dt;
  dynamics::IntegrationOptions opt;
  opt.method = method;
  opt.store_states = false;
  opt.observer = [&curve](double t, const StateVector& psi) {
    curve.times.push_back(t);
    curve.entropies.push_back(
        algebra::partial_trace_and_entropy(psi, 2, 2, algebra::Subsystem::A).entropy);
  };
  const dynamics::Trajectory traj = dynamics::integrate(initial_cat_product(), make_spec(g, eps), T, dt, opt);
  curve.max_norm_drift = traj.max_norm_drift;
  curve.initial_energy = traj.initial_energy;
  curve.max_energy_drift = traj.max_energy_drift;
  return curve;
}

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double analytic_linear_entropy(double g, double t) {
  return binary_entropy(0.5 * (1.0 + std::abs(std::cos(g * t))));
}

StateVector analytic_linear_state(double g, double t) {
  const Complex ph = std::exp(kI * g * t);
  StateVector psi(4);
  psi << 0.5, 0.5 * ph, 0.5 * ph, 0.5;
  return psi;
}

double first_maximum_time(const EntanglementCurve& curve) {
  const auto& e = curve.entropies;
  const auto& t = curve.times;
  for (std::size_t k = 1; k + 1 < e.size(); ++k) {
    if (e[k] > e[k - 1] && e[k] >= e[k + 1]) {
      const double denom = e[k - 1] - 2.0 * e[k] + e[k + 1];
      const double h = t[k + 1] - t[k];
      if (denom == 0.0) return t[k];
      return t[k] + 0.5 * h * (e[k - 1] - e[k + 1]) / denom;
    }
  }
  throw InsufficientData("first_maximum_time: no interior maximum on the sampled window");
}

void write_csv(std::ostream& os, const EntanglementCurve& curve) {
  os << "# g=" << io::fmt(curve.g) << " eps=" << io::fmt(curve.eps) << " dt=" << io::fmt(curve.dt)
     << "\n";
  os << "t,E\n";
  for (std::size_t k = 0; k < curve.times.size(); ++k) {
    os << io::fmt(curve.times[k]) << "," << io::fmt(curve.entropies[k]) << "\n";
  }
}

}  // namespace nlqm::qubit_lab
