#pragma once

#include <complex>

#include <Eigen/Dense>

namespace nlqm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

namespace algebra {

// Truncated Fock space |0>..|N-1>, sized for coherent amplitudes up to
// max_amplitude.
struct FockConfig {
  int truncation = 64;
  double max_amplitude = 4.0;
};

// Poisson weight e^{-a^2} a^{2n} / n! of level n in a coherent state |a>.
double poisson_tail(double amplitude, int n);

// N = max(min_truncation, smallest N with poisson_tail(max_amplitude, N) < 1e-12).
FockConfig fock_config_for(double max_amplitude, int min_truncation = 64);

// Throws ConfigError if N < 2 or the truncation is too small for max_amplitude.
void validate(const FockConfig& config);

struct FockOperators {
  ComplexMatrix a;
  ComplexMatrix a_dag;
  ComplexMatrix number;
  ComplexMatrix parity;
};

FockOperators build_fock_ops(const FockConfig& config);

// D(β) = exp(β a† - β* a), evaluated by Padé scaling-and-squaring.
ComplexMatrix displacement(const FockConfig& config, Complex beta);

// D†(β) P D(β).
ComplexMatrix displaced_parity(const FockConfig& config, Complex beta);

// Truncated Fock expansion e^{-|α|²/2} Σ αⁿ/√n! |n>, not renormalized.
StateVector coherent_state(const FockConfig& config, Complex alpha);

ComplexMatrix identity(int dim);
ComplexMatrix pauli_x();
// i|0><1| - i|1><0|; the negative of the textbook σ_y.
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

struct CatSubspaceOperators {
  ComplexMatrix projector;     // onto span{|α>, |-α>}
  ComplexMatrix sigma_x;       // |α><-α| + |-α><α|
  ComplexMatrix sigma_y;       // i|α><-α| - i|-α><α|
  ComplexMatrix y_compressed;  // projector · Y · projector, β = -iπ/(8α)
  Complex beta;
  bool ill_conditioned = false;  // |α| < 1
};

CatSubspaceOperators cat_subspace_ops(const FockConfig& config, Complex alpha);

enum class Subsystem { A, B };

struct ReducedState {
  ComplexMatrix rho;
  double entropy = 0.0;
};

// Joint index convention: i_A * dim_b + i_B.
ReducedState partial_trace_and_entropy(const StateVector& psi, int dim_a, int dim_b,
                                       Subsystem keep);

// Base-2 von Neumann entropy, eigenvalues below 1e-14 dropped.
double von_neumann_entropy(const ComplexMatrix& rho);

double trace_norm(const ComplexMatrix& m);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

// max |M - M†| over entries.
double hermiticity_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = 1e-12);

// Re <ψ|M|ψ> / <ψ|ψ>.
double expectation(const StateVector& psi, const ComplexMatrix& m);

}  // namespace algebra
}  // namespace nlqm
