#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "nlqm/algebra.hpp"

namespace nlqm::dynamics {

// ε · <ψ|Y|ψ>² / <ψ|ψ>
struct NonlinearTerm {
  double strength = 0.0;
  ComplexMatrix observable;
};

// h(ψ) = <ψ|H|ψ> + Σ ε_k <ψ|Y_k|ψ>² / <ψ|ψ>.
class HamiltonianSpec {
 public:
  explicit HamiltonianSpec(ComplexMatrix linear_op, std::vector<NonlinearTerm> terms = {});

  static HamiltonianSpec zero(int dim);

  int dim() const { return static_cast<int>(linear_op_.rows()); }
  const ComplexMatrix& linear_op() const { return linear_op_; }
  const std::vector<NonlinearTerm>& nonlinear_terms() const { return terms_; }
  bool linear_is_zero() const { return linear_zero_; }
  bool linear_is_diagonal() const { return linear_diagonal_; }

  // Exact flow of the k-th nonlinear term alone over time dt. <Y_k> is
  // conserved along it, so the flow is exp(-i dt ε (2 y0 Y - y0²)).
  void nonlinear_flow(std::size_t k, StateVector& psi, double dt) const;

 private:
  struct TermCache {
    bool involution = false;
    Eigen::VectorXd eigenvalues;
    ComplexMatrix eigenvectors;
  };

  ComplexMatrix linear_op_;
  std::vector<NonlinearTerm> terms_;
  std::vector<TermCache> cache_;
  bool linear_zero_ = false;
  bool linear_diagonal_ = false;
};

double hamiltonian_function(const StateVector& psi, const HamiltonianSpec& spec);

struct Tangent {
  StateVector value;
  bool degenerate = false;  // ψ = 0
};

// -i ∂h/∂<ψ| = -i [H + Σ ε (2 y Y - y²)] ψ,  y = <ψ|Y|ψ>/<ψ|ψ>.
Tangent nonlinear_derivative(const StateVector& psi, const HamiltonianSpec& spec);

StateVector local_nonlinear_step(const StateVector& psi, const ComplexMatrix& observable,
                                 double strength, double dt);

struct Interaction {
  double coupling = 0.0;
  ComplexMatrix op;
};

// Two subsystems composed by summing the local Hamiltonian functions over
// conditional vectors, plus a linear interaction g·H_int.
struct BipartiteSpec {
  BipartiteSpec(HamiltonianSpec a, HamiltonianSpec b, Interaction interaction);

  HamiltonianSpec local_a;
  HamiltonianSpec local_b;
  Interaction interaction;

  int dim_a() const { return local_a.dim(); }
  int dim_b() const { return local_b.dim(); }
  int dim() const { return dim_a() * dim_b(); }
};

double composed_hamiltonian_function(const StateVector& psi, const BipartiteSpec& spec);
Tangent composed_derivative(const StateVector& psi, const BipartiteSpec& spec);

// Strang splitting: A(dt/2) B(dt/2) I(dt) B(dt/2) A(dt/2). Local substeps act
// on each conditional vector independently; the interaction is exact.
class WeinbergStepper {
 public:
  WeinbergStepper(BipartiteSpec spec, double dt);

  void step(StateVector& psi) const;
  double dt() const { return dt_; }
  const BipartiteSpec& spec() const { return spec_; }
  bool diagonal_interaction() const { return diagonal_; }

 private:
  void local_a(StateVector& psi) const;
  void local_b(StateVector& psi) const;
  void interact(StateVector& psi) const;

  BipartiteSpec spec_;
  double dt_;
  bool diagonal_ = true;
  StateVector interaction_phases_;
  ComplexMatrix interaction_propagator_;
  // exp(-i H_local dt/4): half of each local half-step.
  ComplexMatrix linear_quarter_a_;
  ComplexMatrix linear_quarter_b_;
};

StateVector weinberg_step(const StateVector& psi, const BipartiteSpec& spec, double dt);

enum class Method {
  trotter,          // exact-substep Strang splitting
  rk4,              // classical RK4 on the full nonlinear derivative
  interaction_rk4,  // RK4 in the interaction picture of a diagonal linear part
};

const char* to_string(Method method);
Method parse_method(const std::string& name);

using Observer = std::function<void(double t, const StateVector& psi)>;

struct IntegrationOptions {
  Method method = Method::rk4;
  double norm_tolerance = 1e-8;
  double energy_rel_tolerance = 1e-6;
  double energy_abs_tolerance = 1e-9;
  double renormalize_threshold = 1e-12;
  double divergence_factor = 10.0;
  double dt_max = 0.1;
  std::size_t sample_every = 1;  // in steps
  bool store_states = true;
  Observer observer;
};

struct MonitorSample {
  double norm = 1.0;  // relative to the initial norm, before renormalization
  double energy = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;  // empty unless store_states
  std::vector<MonitorSample> monitors;
  std::size_t renormalizations = 0;
  double max_norm_drift = 0.0;
  double max_energy_drift = 0.0;  // absolute
  double initial_energy = 0.0;
  StateVector final_state;
};

Trajectory integrate(const StateVector& psi0, const HamiltonianSpec& spec, double T, double dt,
                     const IntegrationOptions& options = {});
Trajectory integrate(const StateVector& psi0, const BipartiteSpec& spec, double T, double dt,
                     const IntegrationOptions& options = {.method = Method::trotter});

}  // namespace nlqm::dynamics
