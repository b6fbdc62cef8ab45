#include "nlqm/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "nlqm/errors.hpp"

namespace nlqm::algebra {

namespace {

constexpr double kTailBound = 1e-12;
constexpr double kEntropyFloor = 1e-14;

void require_amplitude(const FockConfig& config, double amplitude, const char* what) {
  if (amplitude > config.max_amplitude) {
    std::ostringstream os;
    os << what << ": amplitude " << amplitude << " exceeds max_amplitude "
       << config.max_amplitude << " of the Fock truncation";
    throw TruncationError(os.str());
  }
}

}  // namespace

double poisson_tail(double amplitude, int n) {
  if (amplitude == 0.0) return n == 0 ? 1.0 : 0.0;
  const double a2 = amplitude * amplitude;
  return std::exp(-a2 + n * std::log(a2) - std::lgamma(n + 1.0));
}

FockConfig fock_config_for(double max_amplitude, int min_truncation) {
  if (max_amplitude < 0.0) throw ConfigError("fock_config_for: negative max_amplitude");
  int n = 2;
  // The tail decreases monotonically once n exceeds a², so scan from there.
  while (n < max_amplitude * max_amplitude || poisson_tail(max_amplitude, n) >= kTailBound) {
    ++n;
  }
  return FockConfig{std::max(n, min_truncation), max_amplitude};
}

void validate(const FockConfig& config) {
  if (config.truncation < 2) {
    throw ConfigError("FockConfig: truncation N must be at least 2, got " +
                      std::to_string(config.truncation));
  }
  if (config.max_amplitude < 0.0) throw ConfigError("FockConfig: negative max_amplitude");
  const double a2 = config.max_amplitude * config.max_amplitude;
  if (config.truncation < a2 || poisson_tail(config.max_amplitude, config.truncation) >= kTailBound) {
    std::ostringstream os;
    os << "FockConfig: N=" << config.truncation << " too small for max_amplitude "
       << config.max_amplitude;
    throw ConfigError(os.str());
  }
}

FockOperators build_fock_ops(const FockConfig& config) {
  validate(config);
  const int n = config.truncation;
  FockOperators ops;
  ops.a = ComplexMatrix::Zero(n, n);
  for (int k = 1; k < n; ++k) ops.a(k - 1, k) = std::sqrt(static_cast<double>(k));
  ops.a_dag = ops.a.adjoint();
  ops.number = ComplexMatrix::Zero(n, n);
  ops.parity = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    ops.number(k, k) = static_cast<double>(k);
    ops.parity(k, k) = (k % 2 == 0) ? 1.0 : -1.0;
  }
  return ops;
}

ComplexMatrix displacement(const FockConfig& config, Complex beta) {
  validate(config);
  require_amplitude(config, std::abs(beta), "displacement");
  const int n = config.truncation;
  if (beta == Complex{}) return ComplexMatrix::Identity(n, n);
  ComplexMatrix generator = ComplexMatrix::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double s = std::sqrt(static_cast<double>(k));
    generator(k, k - 1) = beta * s;              // β a†
    generator(k - 1, k) = -std::conj(beta) * s;  // -β* a
  }
  return generator.exp();
}

ComplexMatrix displaced_parity(const FockConfig& config, Complex beta) {
  const ComplexMatrix d = displacement(config, beta);
  const int n = config.truncation;
  // P is diagonal, so D† P D = Σ_k (-1)^k row_k(D)† row_k(D).
  ComplexMatrix pd = d;
  for (int k = 1; k < n; k += 2) pd.row(k) *= -1.0;
  ComplexMatrix y = d.adjoint() * pd;
  // Symmetrize away rounding so the operator is Hermitian to the last bit.
  return 0.5 * (y + y.adjoint());
}

StateVector coherent_state(const FockConfig& config, Complex alpha) {
  validate(config);
  require_amplitude(config, std::abs(alpha), "coherent_state");
  const int n = config.truncation;
  StateVector psi(n);
  psi(0) = std::exp(-0.5 * std::norm(alpha));
  for (int k = 1; k < n; ++k) psi(k) = psi(k - 1) * alpha / std::sqrt(static_cast<double>(k));
  return psi;
}

ComplexMatrix identity(int dim) { return ComplexMatrix::Identity(dim, dim); }

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, kI, -kI, 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

CatSubspaceOperators cat_subspace_ops(const FockConfig& config, Complex alpha) {
  CatSubspaceOperators out;
  out.ill_conditioned = std::abs(alpha) < 1.0;
  if (alpha == Complex{}) throw DomainError("cat_subspace_ops: alpha must be nonzero");

  const StateVector plus = coherent_state(config, alpha);
  const StateVector minus = coherent_state(config, -alpha);

  // Symmetric (Löwdin) orthonormalization: Q = B S^{-1/2}, S = B†B.
  ComplexMatrix basis(plus.size(), 2);
  basis.col(0) = plus;
  basis.col(1) = minus;
  const ComplexMatrix gram = basis.adjoint() * basis;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram);
  if (es.eigenvalues().minCoeff() < 1e-13) {
    throw DomainError("cat_subspace_ops: |alpha> and |-alpha> are numerically parallel");
  }
  const ComplexMatrix ortho = basis * es.operatorInverseSqrt();
  out.projector = ortho * ortho.adjoint();

  out.sigma_x = plus * minus.adjoint() + minus * plus.adjoint();
  out.sigma_y = kI * (plus * minus.adjoint()) - kI * (minus * plus.adjoint());

  out.beta = -kI * std::numbers::pi / (8.0 * alpha);
  const ComplexMatrix y = displaced_parity(config, out.beta);
  out.y_compressed = out.projector * y * out.projector;
  return out;
}

ReducedState partial_trace_and_entropy(const StateVector& psi, int dim_a, int dim_b,
                                       Subsystem keep) {
  if (dim_a <= 0 || dim_b <= 0 || psi.size() != static_cast<Eigen::Index>(dim_a) * dim_b) {
    std::ostringstream os;
    os << "partial_trace: state of dimension " << psi.size() << " does not factor as "
       << dim_a << " x " << dim_b;
    throw ShapeError(os.str());
  }
  // Column-major map: cols(i_A) hold the B amplitudes, so m(i_B, i_A) = ψ[i_A dB + i_B].
  const Eigen::Map<const ComplexMatrix> m(psi.data(), dim_b, dim_a);
  ReducedState out;
  if (keep == Subsystem::A) {
    out.rho = m.transpose() * m.conjugate();
  } else {
    out.rho = m * m.adjoint();
  }
  const double tr = out.rho.trace().real();
  if (tr > 0.0) out.rho /= tr;
  out.entropy = von_neumann_entropy(out.rho);
  return out;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double lambda = es.eigenvalues()(k);
    if (lambda > kEntropyFloor) s -= lambda * std::log2(lambda);
  }
  return s;
}

double trace_norm(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("trace_norm: matrix must be square");
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b - b * a;
}

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) { return hermiticity_defect(m) <= tol; }

double expectation(const StateVector& psi, const ComplexMatrix& m) {
  const double n2 = psi.squaredNorm();
  if (n2 == 0.0) return 0.0;
  return psi.dot(m * psi).real() / n2;
}

}  // namespace nlqm::algebra
