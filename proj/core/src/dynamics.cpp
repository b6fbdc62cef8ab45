#include "nlqm/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include <unsupported/Eigen/MatrixFunctions>

#include "nlqm/errors.hpp"

namespace nlqm::dynamics {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kInvolutionTol = 1e-10;

bool is_diagonal(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j && m(i, j) != Complex{}) return false;
    }
  }
  return true;
}

void require_hermitian(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) throw ShapeError(std::string(what) + ": matrix is not square");
  const double defect = algebra::hermiticity_defect(m);
  if (defect > kHermitianTol) {
    std::ostringstream os;
    os << what << ": not Hermitian (defect " << defect << ")";
    throw ConfigError(os.str());
  }
}

ComplexMatrix propagator(const ComplexMatrix& h, double t) {
  if (h.size() == 0) return h;
  if (is_diagonal(h)) {
    ComplexMatrix u = ComplexMatrix::Zero(h.rows(), h.cols());
    for (Eigen::Index k = 0; k < h.rows(); ++k) u(k, k) = std::exp(-kI * h(k, k).real() * t);
    return u;
  }
  return (ComplexMatrix(-kI * t * h)).exp();
}

// y = <ψ|Y|ψ>/<ψ|ψ>; ψ nonzero.
double observable_mean(const StateVector& psi, const ComplexMatrix& y) {
  return psi.dot(y * psi).real() / psi.squaredNorm();
}

// One local Strang step of a single-system spec on (possibly unnormalized) v.
void local_flow(const HamiltonianSpec& spec, const ComplexMatrix& linear_half, StateVector& v,
                double tau) {
  if (v.squaredNorm() == 0.0) return;
  const std::size_t n_terms = spec.nonlinear_terms().size();
  if (!spec.linear_is_zero()) v = linear_half * v;
  if (n_terms == 1) {
    spec.nonlinear_flow(0, v, tau);
  } else if (n_terms > 1) {
    for (std::size_t k = 0; k < n_terms; ++k) spec.nonlinear_flow(k, v, 0.5 * tau);
    for (std::size_t k = n_terms; k-- > 0;) spec.nonlinear_flow(k, v, 0.5 * tau);
  }
  if (!spec.linear_is_zero()) v = linear_half * v;
}

// Conditional vectors: ψ_j (A-space, fixed B index j) and φ_k (B-space, fixed A index k).
StateVector conditional_a(const StateVector& psi, int dim_a, int dim_b, int j) {
  StateVector v(dim_a);
  for (int i = 0; i < dim_a; ++i) v(i) = psi(i * dim_b + j);
  return v;
}

void scatter_a(StateVector& psi, const StateVector& v, int dim_b, int j) {
  for (Eigen::Index i = 0; i < v.size(); ++i) psi(i * dim_b + j) = v(i);
}

void check_state(const StateVector& psi, int dim, const char* what) {
  if (psi.size() != dim) {
    std::ostringstream os;
    os << what << ": state dimension " << psi.size() << " does not match spec dimension " << dim;
    throw ShapeError(os.str());
  }
}

}  // namespace

HamiltonianSpec::HamiltonianSpec(ComplexMatrix linear_op, std::vector<NonlinearTerm> terms)
    : linear_op_(std::move(linear_op)), terms_(std::move(terms)) {
  if (linear_op_.rows() == 0) throw ShapeError("HamiltonianSpec: empty linear operator");
  require_hermitian(linear_op_, "HamiltonianSpec linear_op");
  linear_zero_ = linear_op_.cwiseAbs().maxCoeff() == 0.0;
  linear_diagonal_ = is_diagonal(linear_op_);
  cache_.reserve(terms_.size());
  for (const NonlinearTerm& term : terms_) {
    if (term.observable.rows() != linear_op_.rows() || term.observable.cols() != linear_op_.cols()) {
      throw ShapeError("HamiltonianSpec: observable dimension differs from linear_op");
    }
    require_hermitian(term.observable, "HamiltonianSpec observable");
    if (!std::isfinite(term.strength)) throw ConfigError("HamiltonianSpec: non-finite strength");
    TermCache c;
    const ComplexMatrix sq = term.observable * term.observable;
    const ComplexMatrix id = ComplexMatrix::Identity(sq.rows(), sq.cols());
    c.involution = (sq - id).cwiseAbs().maxCoeff() < kInvolutionTol;
    if (!c.involution) {
      Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(term.observable);
      c.eigenvalues = es.eigenvalues();
      c.eigenvectors = es.eigenvectors();
    }
    cache_.push_back(std::move(c));
  }
}

HamiltonianSpec HamiltonianSpec::zero(int dim) {
  return HamiltonianSpec(ComplexMatrix::Zero(dim, dim));
}

void HamiltonianSpec::nonlinear_flow(std::size_t k, StateVector& psi, double dt) const {
  const NonlinearTerm& term = terms_.at(k);
  if (term.strength == 0.0 || psi.squaredNorm() == 0.0) return;
  const double y = observable_mean(psi, term.observable);
  const double theta = term.strength * dt;
  const TermCache& c = cache_[k];
  if (c.involution) {
    // exp(-iθ(2yY - y²)) = e^{iθy²} (cos(2θy) - i sin(2θy) Y) for Y² = 1.
    const Complex phase = std::exp(kI * theta * y * y);
    const double ang = 2.0 * theta * y;
    const StateVector ypsi = term.observable * psi;
    psi = phase * (std::cos(ang) * psi - kI * std::sin(ang) * ypsi);
    return;
  }
  StateVector coeffs = c.eigenvectors.adjoint() * psi;
  for (Eigen::Index m = 0; m < coeffs.size(); ++m) {
    coeffs(m) *= std::exp(-kI * theta * (2.0 * y * c.eigenvalues(m) - y * y));
  }
  psi = c.eigenvectors * coeffs;
}

double hamiltonian_function(const StateVector& psi, const HamiltonianSpec& spec) {
  check_state(psi, spec.dim(), "hamiltonian_function");
  const double n2 = psi.squaredNorm();
  if (n2 == 0.0) return 0.0;
  double h = psi.dot(spec.linear_op() * psi).real();
  for (const NonlinearTerm& term : spec.nonlinear_terms()) {
    const double m = psi.dot(term.observable * psi).real();
    h += term.strength * m * m / n2;
  }
  return h;
}

Tangent nonlinear_derivative(const StateVector& psi, const HamiltonianSpec& spec) {
  check_state(psi, spec.dim(), "nonlinear_derivative");
  Tangent out;
  const double n2 = psi.squaredNorm();
  if (n2 == 0.0) {
    out.value = StateVector::Zero(psi.size());
    out.degenerate = true;
    return out;
  }
  StateVector hpsi = spec.linear_is_zero() ? StateVector(StateVector::Zero(psi.size()))
                                           : StateVector(spec.linear_op() * psi);
  for (const NonlinearTerm& term : spec.nonlinear_terms()) {
    if (term.strength == 0.0) continue;
    const StateVector ypsi = term.observable * psi;
    const double y = psi.dot(ypsi).real() / n2;
    hpsi += term.strength * (2.0 * y * ypsi - y * y * psi);
  }
  out.value = -kI * hpsi;
  return out;
}

StateVector local_nonlinear_step(const StateVector& psi, const ComplexMatrix& observable,
                                 double strength, double dt) {
  if (dt <= 0.0) throw ConfigError("local_nonlinear_step: dt must be positive");
  if (observable.rows() != psi.size()) throw ShapeError("local_nonlinear_step: dimension mismatch");
  HamiltonianSpec spec(ComplexMatrix::Zero(psi.size(), psi.size()),
                       {NonlinearTerm{strength, observable}});
  StateVector out = psi;
  spec.nonlinear_flow(0, out, dt);
  return out;
}

BipartiteSpec::BipartiteSpec(HamiltonianSpec a, HamiltonianSpec b, Interaction inter)
    : local_a(std::move(a)), local_b(std::move(b)), interaction(std::move(inter)) {
  const int d = local_a.dim() * local_b.dim();
  if (interaction.op.size() == 0) interaction.op = ComplexMatrix::Zero(d, d);
  if (interaction.op.rows() != d || interaction.op.cols() != d) {
    throw ShapeError("BipartiteSpec: interaction dimension is not dim_a * dim_b");
  }
  require_hermitian(interaction.op, "BipartiteSpec interaction");
  if (!std::isfinite(interaction.coupling)) throw ConfigError("BipartiteSpec: non-finite coupling");
}

double composed_hamiltonian_function(const StateVector& psi, const BipartiteSpec& spec) {
  check_state(psi, spec.dim(), "composed_hamiltonian_function");
  const int da = spec.dim_a();
  const int db = spec.dim_b();
  double h = 0.0;
  for (int j = 0; j < db; ++j) h += hamiltonian_function(conditional_a(psi, da, db, j), spec.local_a);
  for (int k = 0; k < da; ++k) {
    h += hamiltonian_function(psi.segment(static_cast<Eigen::Index>(k) * db, db), spec.local_b);
  }
  if (spec.interaction.coupling != 0.0) {
    h += spec.interaction.coupling * psi.dot(spec.interaction.op * psi).real();
  }
  return h;
}

Tangent composed_derivative(const StateVector& psi, const BipartiteSpec& spec) {
  check_state(psi, spec.dim(), "composed_derivative");
  const int da = spec.dim_a();
  const int db = spec.dim_b();
  Tangent out;
  out.value = StateVector::Zero(psi.size());
  out.degenerate = psi.squaredNorm() == 0.0;
  if (out.degenerate) return out;
  for (int j = 0; j < db; ++j) {
    const Tangent t = nonlinear_derivative(conditional_a(psi, da, db, j), spec.local_a);
    for (int i = 0; i < da; ++i) out.value(i * db + j) += t.value(i);
  }
  for (int k = 0; k < da; ++k) {
    const Tangent t =
        nonlinear_derivative(psi.segment(static_cast<Eigen::Index>(k) * db, db), spec.local_b);
    out.value.segment(static_cast<Eigen::Index>(k) * db, db) += t.value;
  }
  if (spec.interaction.coupling != 0.0) {
    out.value -= kI * spec.interaction.coupling * (spec.interaction.op * psi);
  }
  return out;
}

WeinbergStepper::WeinbergStepper(BipartiteSpec spec, double dt) : spec_(std::move(spec)), dt_(dt) {
  if (!(dt > 0.0)) throw ConfigError("WeinbergStepper: dt must be positive");
  const ComplexMatrix gh = spec_.interaction.coupling * spec_.interaction.op;
  diagonal_ = is_diagonal(gh);
  if (diagonal_) {
    interaction_phases_.resize(gh.rows());
    for (Eigen::Index k = 0; k < gh.rows(); ++k) {
      interaction_phases_(k) = std::exp(-kI * gh(k, k).real() * dt_);
    }
  } else {
    interaction_propagator_ = propagator(gh, dt_);
  }
  linear_quarter_a_ = propagator(spec_.local_a.linear_op(), 0.25 * dt_);
  linear_quarter_b_ = propagator(spec_.local_b.linear_op(), 0.25 * dt_);
}

void WeinbergStepper::local_a(StateVector& psi) const {
  const int da = spec_.dim_a();
  const int db = spec_.dim_b();
  for (int j = 0; j < db; ++j) {
    StateVector v = conditional_a(psi, da, db, j);
    local_flow(spec_.local_a, linear_quarter_a_, v, 0.5 * dt_);
    scatter_a(psi, v, db, j);
  }
}

void WeinbergStepper::local_b(StateVector& psi) const {
  const int da = spec_.dim_a();
  const int db = spec_.dim_b();
  for (int k = 0; k < da; ++k) {
    StateVector v = psi.segment(static_cast<Eigen::Index>(k) * db, db);
    local_flow(spec_.local_b, linear_quarter_b_, v, 0.5 * dt_);
    psi.segment(static_cast<Eigen::Index>(k) * db, db) = v;
  }
}

void WeinbergStepper::interact(StateVector& psi) const {
  if (diagonal_) {
    psi = psi.cwiseProduct(interaction_phases_);
  } else {
    psi = interaction_propagator_ * psi;
  }
}

void WeinbergStepper::step(StateVector& psi) const {
  check_state(psi, spec_.dim(), "weinberg_step");
  local_a(psi);
  local_b(psi);
  interact(psi);
  local_b(psi);
  local_a(psi);
}

StateVector weinberg_step(const StateVector& psi, const BipartiteSpec& spec, double dt) {
  WeinbergStepper stepper(spec, dt);
  StateVector out = psi;
  stepper.step(out);
  return out;
}

const char* to_string(Method method) {
  switch (method) {
    case Method::trotter:
      return "trotter";
    case Method::rk4:
      return "rk4";
    case Method::interaction_rk4:
      return "interaction_rk4";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "trotter") return Method::trotter;
  if (name == "rk4") return Method::rk4;
  if (name == "interaction_rk4") return Method::interaction_rk4;
  throw ConfigError("unknown integration method '" + name + "'");
}

namespace {

template <class Derivative>
void rk4_step(StateVector& psi, double dt, const Derivative& f) {
  const StateVector k1 = f(psi);
  const StateVector k2 = f(psi + 0.5 * dt * k1);
  const StateVector k3 = f(psi + 0.5 * dt * k2);
  const StateVector k4 = f(psi + dt * k3);
  psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Lawson RK4: the diagonal linear part is propagated exactly, RK4 handles the rest.
// half holds exp(-i L dt/2) on the diagonal.
template <class Remainder>
void lawson_step(StateVector& psi, double dt, const StateVector& half, const Remainder& f) {
  const StateVector k1 = f(psi);
  const StateVector k2 = f(half.cwiseProduct(psi + 0.5 * dt * k1));
  const StateVector epsi = half.cwiseProduct(psi);
  const StateVector k3 = f(epsi + 0.5 * dt * k2);
  const StateVector k4 = f(half.cwiseProduct(epsi) + dt * half.cwiseProduct(k3));
  const StateVector full = half.cwiseProduct(half);
  psi = full.cwiseProduct(psi) +
        (dt / 6.0) * (full.cwiseProduct(k1) + 2.0 * half.cwiseProduct(k2 + k3) + k4);
}

template <class Step, class Energy>
Trajectory drive(const StateVector& psi0, double T, double dt, const IntegrationOptions& opt,
                 const Step& step, const Energy& energy) {
  if (!(T > 0.0)) throw ConfigError("integrate: T must be positive");
  if (!(dt > 0.0)) throw ConfigError("integrate: dt must be positive");
  if (dt > opt.dt_max) {
    std::ostringstream os;
    os << "integrate: dt " << dt << " exceeds dt_max " << opt.dt_max;
    throw ConfigError(os.str());
  }
  const double n0 = psi0.norm();
  if (!(n0 > 0.0) || !std::isfinite(n0)) throw DomainError("integrate: initial state has zero norm");
  const long long n_steps = std::max(1LL, std::llround(T / dt));
  const std::size_t every = std::max<std::size_t>(1, opt.sample_every);

  Trajectory traj;
  traj.initial_energy = energy(psi0);
  const double energy_tol = opt.energy_rel_tolerance * std::abs(traj.initial_energy) +
                            opt.energy_abs_tolerance;

  auto record = [&](double t, const StateVector& psi, double norm_ratio) {
    const double e = energy(psi);
    const double drift = std::abs(e - traj.initial_energy);
    if (!std::isfinite(e) || drift > opt.divergence_factor * energy_tol) {
      std::ostringstream os;
      os << "integrate: energy drift " << drift << " exceeds " << opt.divergence_factor
         << "x tolerance at t=" << t;
      throw IntegrationDiverged(os.str(), t);
    }
    traj.max_energy_drift = std::max(traj.max_energy_drift, drift);
    traj.times.push_back(t);
    traj.monitors.push_back(MonitorSample{norm_ratio, e});
    if (opt.store_states) traj.states.push_back(psi);
    if (opt.observer) opt.observer(t, psi);
  };

  StateVector psi = psi0;
  record(0.0, psi, 1.0);
  for (long long s = 1; s <= n_steps; ++s) {
    step(psi);
    const double t = static_cast<double>(s) * dt;
    const double ratio = psi.norm() / n0;
    const double drift = std::abs(ratio - 1.0);
    if (!std::isfinite(ratio) || drift > opt.divergence_factor * opt.norm_tolerance) {
      std::ostringstream os;
      os << "integrate: norm drift " << drift << " exceeds " << opt.divergence_factor
         << "x tolerance at t=" << t;
      throw IntegrationDiverged(os.str(), t);
    }
    traj.max_norm_drift = std::max(traj.max_norm_drift, drift);
    if (drift > opt.renormalize_threshold) {
      psi *= n0 / psi.norm();
      ++traj.renormalizations;
    }
    if (s % static_cast<long long>(every) == 0 || s == n_steps) record(t, psi, ratio);
  }
  traj.final_state = std::move(psi);
  return traj;
}

}  // namespace

Trajectory integrate(const StateVector& psi0, const HamiltonianSpec& spec, double T, double dt,
                     const IntegrationOptions& options) {
  check_state(psi0, spec.dim(), "integrate");
  auto energy = [&](const StateVector& psi) { return hamiltonian_function(psi, spec); };

  switch (options.method) {
    case Method::rk4: {
      auto f = [&](const StateVector& psi) { return nonlinear_derivative(psi, spec).value; };
      return drive(psi0, T, dt, options, [&](StateVector& psi) { rk4_step(psi, dt, f); }, energy);
    }
    case Method::interaction_rk4: {
      if (!spec.linear_is_diagonal()) {
        throw ConfigError("integrate: interaction_rk4 needs a diagonal linear operator");
      }
      StateVector half(spec.dim());
      for (int k = 0; k < spec.dim(); ++k) {
        half(k) = std::exp(-kI * spec.linear_op()(k, k).real() * (0.5 * dt));
      }
      const HamiltonianSpec remainder(ComplexMatrix::Zero(spec.dim(), spec.dim()),
                                      spec.nonlinear_terms());
      auto f = [&](const StateVector& psi) { return nonlinear_derivative(psi, remainder).value; };
      return drive(psi0, T, dt, options,
                   [&](StateVector& psi) { lawson_step(psi, dt, half, f); }, energy);
    }
    case Method::trotter: {
      const ComplexMatrix half = propagator(spec.linear_op(), 0.5 * dt);
      return drive(psi0, T, dt, options,
                   [&](StateVector& psi) { local_flow(spec, half, psi, dt); }, energy);
    }
  }
  throw ConfigError("integrate: unknown method");
}

Trajectory integrate(const StateVector& psi0, const BipartiteSpec& spec, double T, double dt,
                     const IntegrationOptions& options) {
  check_state(psi0, spec.dim(), "integrate");
  auto energy = [&](const StateVector& psi) { return composed_hamiltonian_function(psi, spec); };
  switch (options.method) {
    case Method::trotter: {
      const WeinbergStepper stepper(spec, dt);
      return drive(psi0, T, dt, options, [&](StateVector& psi) { stepper.step(psi); }, energy);
    }
    case Method::rk4: {
      auto f = [&](const StateVector& psi) { return composed_derivative(psi, spec).value; };
      return drive(psi0, T, dt, options, [&](StateVector& psi) { rk4_step(psi, dt, f); }, energy);
    }
    case Method::interaction_rk4:
      throw ConfigError("integrate: interaction_rk4 is not available for bipartite specs");
  }
  throw ConfigError("integrate: unknown method");
}

}  // namespace nlqm::dynamics
