#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "nlqm/algebra.hpp"
#include "nlqm/errors.hpp"
#include "support.hpp"

using namespace nlqm;
using namespace nlqm::algebra;

namespace {

const FockConfig kFock64{64, 4.0};

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(FockOps, SmallestSpace) {
  const FockOperators ops = build_fock_ops({2, 0.0});
  ComplexMatrix a(2, 2);
  a << 0, 1, 0, 0;
  EXPECT_EQ(max_abs(ops.a - a), 0.0);
  EXPECT_EQ(ops.parity(0, 0), Complex(1.0));
  EXPECT_EQ(ops.parity(1, 1), Complex(-1.0));
}

TEST(FockOps, LadderEntry) {
  const FockOperators ops = build_fock_ops({4, 0.0});
  EXPECT_NEAR(ops.a(2, 3).real(), 1.7320508075688772, 1e-15);
}

TEST(FockOps, CanonicalCommutatorBelowTruncation) {
  const FockOperators ops = build_fock_ops(kFock64);
  const ComplexMatrix c = commutator(ops.a, ops.a_dag);
  EXPECT_LT(max_abs(c.topLeftCorner(63, 63) - ComplexMatrix::Identity(63, 63)), 1e-12);
}

TEST(FockOps, ParityAnticommutesWithLadder) {
  const FockOperators ops = build_fock_ops(kFock64);
  EXPECT_EQ(max_abs(ops.parity * ops.a * ops.parity + ops.a), 0.0);
}

TEST(FockOps, RejectsTinySpace) {
  EXPECT_THROW(build_fock_ops({1, 0.0}), ConfigError);
}

TEST(FockConfigRule, DefaultIsAtLeast64AndMeetsTail) {
  const FockConfig c = fock_config_for(4.0);
  EXPECT_GE(c.truncation, 64);
  EXPECT_LT(poisson_tail(4.0, c.truncation), 1e-12);
  const FockConfig big = fock_config_for(9.0);
  EXPECT_GT(big.truncation, 64);
  EXPECT_LT(poisson_tail(9.0, big.truncation), 1e-12);
  EXPECT_NO_THROW(validate(big));
}

TEST(FockConfigRule, ValidateRejectsUndersizedTruncation) {
  EXPECT_THROW(validate({16, 4.0}), ConfigError);
}

TEST(Displacement, ZeroIsIdentity) {
  EXPECT_EQ(max_abs(displacement(kFock64, 0.0) - ComplexMatrix::Identity(64, 64)), 0.0);
}

TEST(Displacement, VacuumAmplitude) {
  EXPECT_NEAR(std::abs(displacement(kFock64, 1.0)(0, 0)), 0.6065306597126334, 1e-12);
}

TEST(Displacement, UnitaryAndMapsVacuumToCoherent) {
  const Complex beta{0.4, -1.1};
  const ComplexMatrix d = displacement(kFock64, beta);
  EXPECT_LT(max_abs(d.adjoint() * d - ComplexMatrix::Identity(64, 64)), 1e-10);
  EXPECT_LT((d.col(0) - coherent_state(kFock64, beta)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Displacement, CompositionLaw) {
  const Complex a{0.7, 0.0};
  const Complex b{0.0, 0.3};
  const ComplexMatrix lhs = displacement(kFock64, a) * displacement(kFock64, b);
  const ComplexMatrix rhs = displacement(kFock64, a + b) * std::exp(kI * std::imag(a * std::conj(b)));
  // Compare on levels well below the cut, where truncation does not reach.
  EXPECT_LT(max_abs((lhs - rhs).topLeftCorner(40, 40)), 1e-9);
}

TEST(Displacement, CompositionLawRandomProperty) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Complex a = gen::random_complex(rng, 1.0);
    const Complex b = gen::random_complex(rng, 1.0);
    const ComplexMatrix lhs = displacement(kFock64, a) * displacement(kFock64, b);
    const ComplexMatrix rhs =
        displacement(kFock64, a + b) * std::exp(kI * std::imag(a * std::conj(b)));
    EXPECT_LT(max_abs((lhs - rhs).topLeftCorner(32, 32)), 1e-9) << "a=" << a << " b=" << b;
  }
}

TEST(Displacement, RejectsAmplitudeBeyondConfig) {
  EXPECT_THROW(displacement(kFock64, 4.5), TruncationError);
  EXPECT_THROW(coherent_state(kFock64, Complex{0.0, 5.0}), TruncationError);
}

TEST(CoherentState, VacuumAndOverlaps) {
  const StateVector v = coherent_state(kFock64, 0.0);
  EXPECT_EQ(v(0), Complex(1.0));
  EXPECT_EQ(v.tail(63).norm(), 0.0);
  for (double a : {1.0, 2.0}) {
    const StateVector p = coherent_state(kFock64, a);
    const StateVector m = coherent_state(kFock64, -a);
    EXPECT_NEAR(p.norm(), 1.0, 1e-10);
    EXPECT_NEAR(std::abs(p.dot(m)), std::exp(-2.0 * a * a), 1e-10);
  }
  EXPECT_NEAR(std::exp(-2.0), 0.1353353, 1e-7);
  EXPECT_NEAR(std::exp(-8.0), 3.3546e-4, 1e-8);
}

TEST(CoherentState, OverlapLawRandomProperty) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Complex a = gen::random_complex(rng, 2.0);
    const StateVector p = coherent_state(kFock64, a);
    const StateVector m = coherent_state(kFock64, -a);
    EXPECT_NEAR(std::abs(p.dot(m)), std::exp(-2.0 * std::norm(a)), 1e-10);
  }
}

TEST(CatSubspace, ParityIdentityIsExact) {
  for (double a : {1.0, 1.5, 2.0, 2.5, 3.0}) {
    const CatSubspaceOperators ops = cat_subspace_ops(kFock64, a);
    const FockOperators f = build_fock_ops(kFock64);
    const double lhs = trace_norm(ops.projector * f.parity * ops.projector - ops.sigma_x);
    EXPECT_NEAR(lhs, 2.0 * std::exp(-2.0 * a * a), 1e-9) << "alpha=" << a;
  }
}

TEST(CatSubspace, QuotedParityValues) {
  const FockOperators f = build_fock_ops(kFock64);
  auto tn = [&](double a) {
    const CatSubspaceOperators ops = cat_subspace_ops(kFock64, a);
    return trace_norm(ops.projector * f.parity * ops.projector - ops.sigma_x);
  };
  EXPECT_NEAR(tn(2.0), 6.7093e-4, 1e-8);
  EXPECT_NEAR(tn(3.0), 3.05e-8, 1e-10);
}

// The σ_y identity holds in the large-|α| limit; the gap shrinks monotonically.
TEST(CatSubspace, SigmaYIdentityApproachedAsymptotically) {
  double previous = 1.0;
  for (double a : {1.0, 1.5, 2.0, 2.5, 3.0}) {
    const CatSubspaceOperators ops = cat_subspace_ops(kFock64, a);
    const double lhs = trace_norm(ops.y_compressed - ops.sigma_y);
    const double rhs = 2.0 * (1.0 - std::exp(-std::numbers::pi * std::numbers::pi / (32.0 * a * a)));
    const double gap = std::abs(lhs - rhs);
    EXPECT_LT(gap, previous) << "alpha=" << a;
    previous = gap;
  }
  EXPECT_LT(previous, 1e-12);
  const CatSubspaceOperators ops2 = cat_subspace_ops(kFock64, 2.0);
  EXPECT_NEAR(trace_norm(ops2.y_compressed - ops2.sigma_y), 0.148417, 1e-6);
}

TEST(CatSubspace, ProjectorAndConvention) {
  const CatSubspaceOperators ops = cat_subspace_ops(kFock64, 1.5);
  EXPECT_LT(max_abs(ops.projector * ops.projector - ops.projector), 1e-12);
  EXPECT_NEAR(ops.projector.trace().real(), 2.0, 1e-12);
  EXPECT_TRUE(is_hermitian(ops.sigma_y));
  EXPECT_NEAR(std::abs(ops.beta - Complex(0.0, -std::numbers::pi / 12.0)), 0.0, 1e-15);
  EXPECT_FALSE(ops.ill_conditioned);
  EXPECT_TRUE(cat_subspace_ops(kFock64, 0.5).ill_conditioned);
  EXPECT_THROW(cat_subspace_ops(kFock64, 0.0), DomainError);
}

TEST(Pauli, PaperSigmaYConvention) {
  const ComplexMatrix y = pauli_y();
  EXPECT_EQ(y(0, 1), kI);
  EXPECT_EQ(y(1, 0), -kI);
  EXPECT_LT(max_abs(y * y - identity(2)), 1e-15);
}

TEST(PartialTrace, ReferenceStates) {
  const StateVector product = StateVector::Constant(4, 0.5);
  EXPECT_LT(partial_trace_and_entropy(product, 2, 2, Subsystem::A).entropy, 1e-10);

  StateVector bell = StateVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(partial_trace_and_entropy(bell, 2, 2, Subsystem::A).entropy, 1.0, 1e-12);

  const Complex ph = std::exp(kI * std::numbers::pi / 3.0);
  StateVector s(4);
  s << 0.5, 0.5 * ph, 0.5 * ph, 0.5;
  const ReducedState r = partial_trace_and_entropy(s, 2, 2, Subsystem::A);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(r.rho);
  EXPECT_NEAR(es.eigenvalues()(0), 0.25, 1e-12);
  EXPECT_NEAR(es.eigenvalues()(1), 0.75, 1e-12);
  EXPECT_NEAR(r.entropy, 0.811278124459133, 1e-9);
}

TEST(PartialTrace, IndexConventionKeepsSubsystems) {
  // |1>_A ⊗ (|0> + |1>)_B / √2: joint index i_A * dB + i_B.
  StateVector s = StateVector::Zero(6);
  s(1 * 3 + 0) = s(1 * 3 + 2) = 1.0 / std::sqrt(2.0);
  const ReducedState ra = partial_trace_and_entropy(s, 2, 3, Subsystem::A);
  EXPECT_NEAR(ra.rho(1, 1).real(), 1.0, 1e-15);
  const ReducedState rb = partial_trace_and_entropy(s, 2, 3, Subsystem::B);
  EXPECT_NEAR(rb.rho(0, 2).real(), 0.5, 1e-15);
  EXPECT_NEAR(rb.rho(1, 1).real(), 0.0, 1e-15);
}

TEST(PartialTrace, ShapeMismatch) {
  EXPECT_THROW(partial_trace_and_entropy(StateVector::Ones(5), 2, 2, Subsystem::A), ShapeError);
}

TEST(PartialTrace, RandomProductAndLocalUnitaryInvariance) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const int da = 2 + trial % 3;
    const int db = 2 + (trial / 3) % 3;
    const StateVector a = gen::random_state(rng, da);
    const StateVector b = gen::random_state(rng, db);
    StateVector prod(da * db);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < db; ++j) prod(i * db + j) = a(i) * b(j);
    EXPECT_LT(partial_trace_and_entropy(prod, da, db, Subsystem::A).entropy, 1e-10);

    const StateVector psi = gen::random_state(rng, da * db);
    const ReducedState r = partial_trace_and_entropy(psi, da, db, Subsystem::A);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(r.rho);
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-10);
    EXPECT_NEAR(r.rho.trace().real(), 1.0, 1e-12);
    EXPECT_TRUE(is_hermitian(r.rho, 1e-12));
    const StateVector rotated =
        kron(gen::random_unitary(rng, da), gen::random_unitary(rng, db)) * psi;
    EXPECT_NEAR(partial_trace_and_entropy(rotated, da, db, Subsystem::A).entropy, r.entropy, 1e-10);
    EXPECT_NEAR(partial_trace_and_entropy(psi, da, db, Subsystem::B).entropy, r.entropy, 1e-10);
  }
}

TEST(TraceNorm, Examples) {
  EXPECT_EQ(trace_norm(ComplexMatrix::Zero(3, 3)), 0.0);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -2.0;
  EXPECT_NEAR(trace_norm(d), 3.0, 1e-14);
  std::mt19937_64 rng(3);
  const StateVector u = gen::random_state(rng, 5);
  const StateVector v = gen::random_state(rng, 5);
  EXPECT_NEAR(trace_norm(u * v.adjoint()), 1.0, 1e-12);
  EXPECT_THROW(trace_norm(ComplexMatrix::Zero(2, 3)), ShapeError);
}

TEST(TraceNorm, TriangleInequalityProperty) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix a = gen::random_hermitian(rng, 4);
    const ComplexMatrix b = gen::random_unitary(rng, 4);
    EXPECT_LE(trace_norm(a + b), trace_norm(a) + trace_norm(b) + 1e-12);
    EXPECT_NEAR(trace_norm(b), 4.0, 1e-12);
  }
}

TEST(Hermiticity, Flags) {
  std::mt19937_64 rng(1);
  EXPECT_TRUE(is_hermitian(gen::random_hermitian(rng, 4)));
  EXPECT_FALSE(is_hermitian(build_fock_ops({4, 0.0}).a));
}
