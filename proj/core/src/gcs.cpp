#include "nlqm/gcs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "nlqm/errors.hpp"

namespace nlqm::gcs {

using oscillator_lab::OscillatorParams;

SmallAmplitudeConstants small_amplitude_constants(double beta_abs) {
  const double b2 = beta_abs * beta_abs;
  const double e = std::exp(-4.0 * b2);
  return {4.0 * e * (1.0 - 4.0 * b2), 16.0 * b2 * e, 4.0 * beta_abs * e};
}

Complex lemma_integral_closed(int nu, Complex b, Complex c) {
  if (!(b.real() > 0.0)) throw DomainError("lemma_integral_closed: Re(b) must be positive");
  if (nu < 0) throw DomainError("lemma_integral_closed: nu must be non-negative");
  const Complex d = (b + 1.0) * (b + 1.0);
  if (nu == 0) return c / d;
  if (nu == 1) return 1.0 / d;
  return {};
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw ConfigError("gauss_legendre: need at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  // P_n(x) and its derivative by the three-term recurrence.
  auto legendre = [n](double x, double& dp) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    return p1;
  };
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double dx = legendre(x, dp) / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

namespace {

Complex polar_sum(int nu, Complex b, Complex c, double radius, int n_radial, int n_angular) {
  std::vector<double> x, w;
  gauss_legendre(n_radial, x, w);
  const Complex s = b + 1.0;
  Complex total{};
  for (int i = 0; i < n_radial; ++i) {
    const double rho = 0.5 * radius * (x[i] + 1.0);
    const double wr = 0.5 * radius * w[i];
    Complex ring{};
    for (int j = 0; j < n_angular; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / n_angular;
      const Complex z = std::polar(rho, phi);
      const Complex zc = std::conj(z);
      ring += std::pow(zc, nu) * z * std::exp(c * zc);
    }
    ring *= 2.0 * std::numbers::pi / n_angular;
    total += wr * rho * std::exp(-s * rho * rho) * ring;
  }
  return total / std::numbers::pi;
}

}  // namespace

QuadratureResult lemma_integral_quadrature(int nu, Complex b, Complex c, const QuadratureGrid& grid) {
  if (!(b.real() > 0.0)) throw DomainError("lemma_integral_quadrature: Re(b) must be positive");
  if (nu < 0) throw DomainError("lemma_integral_quadrature: nu must be non-negative");
  if (grid.radial < 4 || grid.angular < 4) throw ConfigError("lemma_integral_quadrature: grid too coarse");
  // Radius where ρ^{ν+2} e^{-Re(b+1)ρ² + |c|ρ} drops below the tail bound.
  const double s = (b + 1.0).real();
  const double cabs = std::abs(c);
  double radius = 1.0;
  auto envelope = [&](double r) {
    return (nu + 2.0) * std::log(std::max(r, 1.0)) - s * r * r + cabs * r;
  };
  while (envelope(radius) > std::log(grid.tail) || radius < cabs / s) radius += 0.25;

  QuadratureResult out;
  out.radius = radius;
  out.value = polar_sum(nu, b, c, radius, grid.radial, grid.angular);
  const Complex coarse = polar_sum(nu, b, c, radius, grid.radial / 2, grid.angular / 2);
  out.error_estimate = std::abs(out.value - coarse);
  out.accurate = out.error_estimate <= 1e-10 * std::max(1.0, std::abs(out.value));
  return out;
}

Complex gcs_integral(int nu, Complex alpha, Complex beta) {
  return lemma_integral_closed(nu, 0.5, -(alpha + 2.0 * beta));
}

GcsPoint hamilton_rhs(const GcsPoint& point, const OscillatorParams& params) {
  const Complex a = point.alpha;
  const Complex beta = params.beta;
  const double eps = params.eps;
  GcsPoint d;
  const Complex ab = a + beta;
  d.alpha = -kI * (params.omega0 * a - 4.0 * eps * ab * std::exp(-4.0 * std::norm(ab)));
  if (eps == 0.0) return d;
  const Complex pref = -kI * eps * (4.0 / 9.0) *
                       std::exp(-0.5 * (std::norm(a) + 4.0 * std::norm(beta))) *
                       std::exp(-2.0 * beta * a) * std::conj(a);
  const Complex shift = a + 2.0 * beta;
  // μ = 0 carries a single δ_{μ0} term; the α^μ sum starts at μ = 1.
  d.theta0 = pref * (-shift);
  d.theta1 = pref * (1.0 - shift * a);
  return d;
}

namespace {

GcsPoint axpy(const GcsPoint& p, double h, const GcsPoint& k) {
  return {p.alpha + h * k.alpha, p.theta0 + h * k.theta0, p.theta1 + h * k.theta1};
}

bool finite(const GcsPoint& p) {
  auto ok = [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); };
  return ok(p.alpha) && ok(p.theta0) && ok(p.theta1);
}

}  // namespace

GcsTrajectory integrate_gcs(const GcsPoint& start, const OscillatorParams& params, double T,
                            double dt) {
  if (!(T > 0.0) || !(dt > 0.0)) throw ConfigError("integrate_gcs: T and dt must be positive");
  const long long n = std::max(1LL, std::llround(T / dt));
  GcsTrajectory traj;
  traj.times.reserve(n + 1);
  traj.points.reserve(n + 1);
  GcsPoint p = start;
  traj.times.push_back(0.0);
  traj.points.push_back(p);
  for (long long s = 1; s <= n; ++s) {
    const GcsPoint k1 = hamilton_rhs(p, params);
    const GcsPoint k2 = hamilton_rhs(axpy(p, 0.5 * dt, k1), params);
    const GcsPoint k3 = hamilton_rhs(axpy(p, 0.5 * dt, k2), params);
    const GcsPoint k4 = hamilton_rhs(axpy(p, dt, k3), params);
    p.alpha += dt / 6.0 * (k1.alpha + 2.0 * k2.alpha + 2.0 * k3.alpha + k4.alpha);
    p.theta0 += dt / 6.0 * (k1.theta0 + 2.0 * k2.theta0 + 2.0 * k3.theta0 + k4.theta0);
    p.theta1 += dt / 6.0 * (k1.theta1 + 2.0 * k2.theta1 + 2.0 * k3.theta1 + k4.theta1);
    const double t = static_cast<double>(s) * dt;
    if (!finite(p)) {
      std::ostringstream os;
      os << "integrate_gcs: non-finite state at t=" << t;
      throw IntegrationDiverged(os.str(), t);
    }
    traj.times.push_back(t);
    traj.points.push_back(p);
  }
  return traj;
}

Complex small_amplitude_solution(Complex alpha0, const SmallAmplitudeConstants& consts,
                                 const OscillatorParams& params, double t) {
  const double omega = params.omega0 - consts.w * params.eps;
  const double r = params.eps / params.omega0;
  return alpha0 * std::exp(-kI * t * omega) +
         r * (kI * consts.kappa * (1.0 - std::cos(t * omega)) -
              (consts.kappa + kI * alpha0 * consts.p) * std::sin(t * omega));
}

double predicted_shift(Regime regime, const OscillatorParams& params, double alpha0) {
  const double r = params.eps / params.omega0;
  if (regime == Regime::large) return -4.0 * r * std::exp(-4.0 * alpha0 * alpha0);
  const double b2 = std::norm(params.beta);
  return 4.0 * r * std::exp(-4.0 * b2) * (4.0 * b2 - 1.0);
}

ThetaPair theta_solutions(double t, Complex alpha0, Complex beta, double eps, double omega0) {
  const double r = eps / omega0;
  const Complex osc = std::exp(kI * omega0 * t) - 1.0;
  const double damp = std::exp(-2.0 * std::norm(beta));
  ThetaPair out;
  out.theta0 = (8.0 / 9.0) * r * beta * damp * std::conj(alpha0) * osc;
  out.theta1 = -(4.0 / 9.0) * r * damp * std::conj(alpha0) * osc;
  return out;
}

FockComparison compare_with_fock(const OscillatorParams& params, double alpha0, double T, double dt) {
  const oscillator_lab::GroundState ground = oscillator_lab::ground_state(params);
  const StateVector psi0 =
      algebra::displacement(params.fock, Complex{alpha0, 0.0}) * ground.psi;
  Complex a0{};
  for (Eigen::Index k = 0; k + 1 < psi0.size(); ++k) {
    a0 += std::conj(psi0(k)) * std::sqrt(static_cast<double>(k + 1)) * psi0(k + 1);
  }
  a0 /= psi0.squaredNorm();

  const oscillator_lab::DisplacedRun run = oscillator_lab::displaced_run(params, alpha0, T, dt, &ground);
  const GcsTrajectory traj = integrate_gcs(GcsPoint{a0, {}, {}}, params, T, dt);
  if (traj.times.size() != run.times.size()) {
    throw ShapeError("compare_with_fock: time grids differ");
  }
  FockComparison out;
  out.times = run.times;
  out.fock_x = run.x;
  double acc = 0.0;
  for (std::size_t k = 0; k < traj.points.size(); ++k) {
    const double xg = traj.points[k].alpha.real();
    out.gcs_x.push_back(xg);
    acc += (xg - run.x[k]) * (xg - run.x[k]);
  }
  out.rms = std::sqrt(acc / static_cast<double>(traj.points.size()));
  return out;
}

}  // namespace nlqm::gcs
