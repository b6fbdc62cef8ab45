#include "nlqm/oscillator_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nlqm/errors.hpp"
#include "nlqm/parallel.hpp"

namespace nlqm::oscillator_lab {

namespace {

constexpr double kEnergyStop = 1e-13;
constexpr double kGradientStop = 1e-10;

}  // namespace

void validate(const OscillatorParams& params) {
  if (!(params.omega0 > 0.0)) throw ConfigError("OscillatorParams: omega0 must be positive");
  if (!(params.eps >= 0.0)) throw ConfigError("OscillatorParams: eps must be non-negative");
  algebra::validate(params.fock);
  if (std::abs(params.beta) > params.fock.max_amplitude) {
    throw TruncationError("OscillatorParams: |beta| exceeds max_amplitude");
  }
}

bool perturbative(const OscillatorParams& params) { return params.eps / params.omega0 <= 1.0; }

ComplexMatrix build_Y(const OscillatorParams& params) {
  validate(params);
  return algebra::displaced_parity(params.fock, params.beta);
}

dynamics::HamiltonianSpec make_spec(const OscillatorParams& params, const ComplexMatrix& y) {
  validate(params);
  const int n = params.fock.truncation;
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) h(k, k) = params.omega0 * k;
  std::vector<dynamics::NonlinearTerm> terms;
  if (params.eps != 0.0) terms.push_back({params.eps, y});
  return dynamics::HamiltonianSpec(h, terms);
}

dynamics::HamiltonianSpec make_spec(const OscillatorParams& params) {
  return make_spec(params, build_Y(params));
}

Complex vacuum_amplitude_prediction(const OscillatorParams& params) {
  const double b2 = std::norm(params.beta);
  return 4.0 * params.beta * (params.eps / params.omega0) * std::exp(-4.0 * b2);
}

GroundState ground_state(const OscillatorParams& params, int max_iterations) {
  validate(params);
  const int n = params.fock.truncation;
  Eigen::VectorXd number(n);
  for (int k = 0; k < n; ++k) number(k) = params.omega0 * k;
  const ComplexMatrix y = params.eps != 0.0 ? build_Y(params) : ComplexMatrix();

  auto energy = [&](const StateVector& psi, double& ymean, StateVector& ypsi) {
    double e = psi.dot(number.cwiseProduct(psi)).real();
    if (params.eps != 0.0) {
      ypsi = y * psi;
      ymean = psi.dot(ypsi).real();
      e += params.eps * ymean * ymean;
    }
    return e;
  };

  GroundState out;
  if (params.eps == 0.0) {
    out.psi = StateVector::Zero(n);
    out.psi(0) = 1.0;
    return out;
  }

  StateVector psi = algebra::coherent_state(params.fock, vacuum_amplitude_prediction(params));
  psi.normalize();
  const double eta0 =
      std::min(0.1 / params.omega0, 1.0 / (params.omega0 * (n - 1) + 2.0 * params.eps));
  double eta = eta0;
  double ymean = 0.0;
  StateVector ypsi;
  double e = energy(psi, ymean, ypsi);

  for (int it = 1; it <= max_iterations; ++it) {
    StateVector grad = number.cwiseProduct(psi) + 2.0 * params.eps * ymean * ypsi;
    grad -= psi.dot(grad) * psi;
    const double gnorm = grad.norm();
    out.gradient_norm = gnorm;

    double en = 0.0;
    double yn = 0.0;
    StateVector trial, ytrial;
    for (;;) {
      trial = psi - eta * grad;
      trial.normalize();
      en = energy(trial, yn, ytrial);
      if (en <= e + 1e-14 * std::max(1.0, std::abs(e)) || eta < 1e-12 * eta0) break;
      eta *= 0.5;
    }
    const double change = std::abs(e - en);
    psi = std::move(trial);
    ypsi = std::move(ytrial);
    ymean = yn;
    e = en;
    eta = std::min(eta0, 2.0 * eta);
    if (change < kEnergyStop && gnorm < kGradientStop) {
      out.psi = psi;
      out.energy = e;
      out.iterations = it;
      return out;
    }
  }
  std::ostringstream os;
  os << "ground_state: no convergence in " << max_iterations << " steps (gradient norm "
     << out.gradient_norm << ")";
  throw SolverError(os.str(), e);
}

double position(const StateVector& psi) {
  Complex acc{};
  for (Eigen::Index k = 0; k + 1 < psi.size(); ++k) {
    acc += std::conj(psi(k)) * std::sqrt(static_cast<double>(k + 1)) * psi(k + 1);
  }
  return acc.real() / psi.squaredNorm();
}

DisplacedRun displaced_run(const OscillatorParams& params, double alpha0, double T, double dt,
                           const GroundState* ground) {
  validate(params);
  if (alpha0 < 0.0) throw ConfigError("displaced_run: alpha0 must be non-negative");
  const double reach = alpha0 + std::abs(vacuum_amplitude_prediction(params));
  if (reach > 0.5 * params.fock.max_amplitude) {
    std::ostringstream os;
    os << "displaced_run: alpha0 + |alpha_v| = " << reach << " exceeds max_amplitude/2";
    throw TruncationError(os.str());
  }
  GroundState local;
  if (!ground) {
    local = ground_state(params);
    ground = &local;
  }
  const StateVector psi0 = algebra::displacement(params.fock, Complex{alpha0, 0.0}) * ground->psi;
  const dynamics::HamiltonianSpec spec = make_spec(params);

  DisplacedRun run;
  dynamics::IntegrationOptions opt;
  opt.method = dynamics::Method::interaction_rk4;
  opt.store_states = false;
  opt.observer = [&run](double t, const StateVector& psi) {
    run.times.push_back(t);
    run.x.push_back(position(psi));
  };
  const dynamics::Trajectory traj = dynamics::integrate(psi0, spec, T, dt, opt);
  run.max_norm_drift = traj.max_norm_drift;
  run.max_energy_drift = traj.max_energy_drift;
  run.initial_energy = traj.initial_energy;
  return run;
}

FrequencyMeasurement estimate_frequency(const std::vector<double>& times,
                                        const std::vector<double>& x) {
  if (times.size() != x.size()) throw ShapeError("estimate_frequency: size mismatch");
  const std::size_t n = times.size();
  if (n < 5) throw InsufficientData("estimate_frequency: fewer than 5 samples");

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> crossings;
  for (std::size_t k = 1; k < n; ++k) {
    const double a = x[k - 1] - mean;
    const double b = x[k] - mean;
    if ((a < 0.0 && b >= 0.0) || (a > 0.0 && b <= 0.0)) {
      crossings.push_back(times[k - 1] + (times[k] - times[k - 1]) * a / (a - b));
    }
  }
  if (crossings.size() < 3) throw InsufficientData("estimate_frequency: fewer than 3 zero crossings");
  const double span = crossings.back() - crossings.front();
  FrequencyMeasurement seed;
  seed.method = EstimatorMethod::zero_crossing;
  seed.omega = std::numbers::pi * static_cast<double>(crossings.size() - 1) / span;
  seed.uncertainty = seed.omega * (times[1] - times[0]) / span;

  const auto m = static_cast<Eigen::Index>(n);
  Eigen::VectorXd t(m), y(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    t(i) = times[i];
    y(i) = x[i];
  }
  auto linear_fit = [&](double w) {
    Eigen::MatrixXd design(m, 3);
    design.col(0).setOnes();
    design.col(1) = (w * t).array().cos().matrix();
    design.col(2) = (w * t).array().sin().matrix();
    return Eigen::Vector3d(design.colPivHouseholderQr().solve(y));
  };

  double w = seed.omega;
  Eigen::Vector3d lin = linear_fit(w);
  Eigen::Vector4d p(lin(0), lin(1), lin(2), w);
  Eigen::MatrixXd jac(m, 4);
  Eigen::VectorXd r(m);
  auto evaluate = [&](const Eigen::Vector4d& q) {
    for (Eigen::Index i = 0; i < m; ++i) {
      const double c = std::cos(q(3) * t(i));
      const double s = std::sin(q(3) * t(i));
      r(i) = y(i) - (q(0) + q(1) * c + q(2) * s);
      jac(i, 0) = 1.0;
      jac(i, 1) = c;
      jac(i, 2) = s;
      jac(i, 3) = t(i) * (-q(1) * s + q(2) * c);
    }
  };
  bool ok = false;
  for (int it = 0; it < 100; ++it) {
    evaluate(p);
    const Eigen::Vector4d step = jac.colPivHouseholderQr().solve(r);
    if (!step.allFinite()) break;
    p += step;
    if (std::abs(step(3)) <= 1e-15 * std::abs(p(3))) {
      ok = true;
      break;
    }
    if (it >= 20 && std::abs(step(3)) <= 1e-13 * std::abs(p(3))) {
      ok = true;
      break;
    }
  }
  if (!ok || !(p(3) > 0.0) || std::abs(p(3) - seed.omega) > 0.25 * seed.omega) return seed;

  evaluate(p);
  const double dof = static_cast<double>(m) - 4.0;
  const double sigma2 = r.squaredNorm() / std::max(dof, 1.0);
  const Eigen::Matrix4d normal = jac.transpose() * jac;
  const Eigen::Matrix4d cov = sigma2 * normal.inverse();
  FrequencyMeasurement out;
  out.method = EstimatorMethod::sinusoid_fit;
  out.omega = p(3);
  out.uncertainty = std::max(std::sqrt(std::max(cov(3, 3), 0.0)),
                             std::numeric_limits<double>::epsilon() * p(3));
  return out;
}

std::vector<double> default_alpha0_grid() {
  std::vector<double> grid{0.05};
  for (int k = 10; k >= 0; --k) grid.push_back(2.0 * std::pow(2.0, -0.5 * k));
  return grid;
}

std::vector<ShiftPoint> frequency_shift_curve(const OscillatorParams& params,
                                              const std::vector<double>& alpha0_grid, double T,
                                              double dt, int threads) {
  validate(params);
  if (!(params.eps > 0.0)) throw ConfigError("frequency_shift_curve: eps must be positive");
  const GroundState ground = ground_state(params);
  return parallel::parallel_map(alpha0_grid.size(), threads, [&](std::size_t i) {
    const DisplacedRun run = displaced_run(params, alpha0_grid[i], T, dt, &ground);
    const FrequencyMeasurement f = estimate_frequency(run.times, run.x);
    ShiftPoint p;
    p.alpha0 = alpha0_grid[i];
    p.omega = f.omega;
    p.omega_err = f.uncertainty;
    p.normalized_shift = (f.omega - params.omega0) / params.eps;
    return p;
  });
}

}  // namespace nlqm::oscillator_lab
