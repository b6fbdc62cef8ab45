#include "nlqm/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "nlqm/errors.hpp"
#include "nlqm/parallel.hpp"

namespace nlqm::calibration {

using qubit_lab::EntanglementCurve;

double deviation(const EntanglementCurve& a, const EntanglementCurve& b) {
  if (a.times.size() != b.times.size() || a.times.size() != a.entropies.size() ||
      b.times.size() != b.entropies.size()) {
    throw ShapeError("deviation: curves have different lengths");
  }
  if (a.times.size() < 2) throw ShapeError("deviation: need at least two samples");
  for (std::size_t k = 0; k < a.times.size(); ++k) {
    if (std::abs(a.times[k] - b.times[k]) > 1e-12 * std::max(1.0, std::abs(a.times[k]))) {
      throw ShapeError("deviation: time grids differ");
    }
  }
  double acc = 0.0;
  for (std::size_t k = 1; k < a.times.size(); ++k) {
    const double d0 = a.entropies[k - 1] - b.entropies[k - 1];
    const double d1 = a.entropies[k] - b.entropies[k];
    acc += 0.5 * (a.times[k] - a.times[k - 1]) * (d0 * d0 + d1 * d1);
  }
  return acc / (a.times.back() - a.times.front());
}

EntanglementCurve reference_curve(const SearchOptions& options) {
  return qubit_lab::entanglement_curve(1.0, 0.0, options.T, options.dt);
}

EpsilonStar find_epsilon_star(double g, const SearchOptions& options,
                              const EntanglementCurve& reference) {
  if (!(g > 0.0 && g <= 1.0)) throw ConfigError("find_epsilon_star: g must lie in (0, 1]");
  if (!(options.lo < options.hi)) throw ConfigError("find_epsilon_star: need lo < hi");
  if (options.lo < 0.0) throw ConfigError("find_epsilon_star: eps must be non-negative");
  if (options.scan_points < 3) throw ConfigError("find_epsilon_star: scan needs >= 3 points");
  if (!(options.tol > 0.0)) throw ConfigError("find_epsilon_star: tol must be positive");

  EpsilonStar out;
  out.g = g;
  auto eval = [&](double eps) {
    const double d = deviation(qubit_lab::entanglement_curve(g, eps, options.T, options.dt), reference);
    out.probes.push_back({eps, d});
    return d;
  };

  const int n = options.scan_points;
  std::vector<double> grid(n), vals(n);
  for (int k = 0; k < n; ++k) {
    grid[k] = options.lo + (options.hi - options.lo) * k / (n - 1);
    vals[k] = eval(grid[k]);
  }
  const int m = static_cast<int>(std::min_element(vals.begin(), vals.end()) - vals.begin());

  double a = grid[std::max(m - 1, 0)];
  double b = grid[std::min(m + 1, n - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = eval(x1);
  double f2 = eval(x2);
  while (b - a > options.tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = eval(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = eval(x2);
    }
  }
  eval(0.5 * (a + b));

  const auto best = std::min_element(out.probes.begin(), out.probes.end(),
                                     [](const Probe& p, const Probe& q) { return p.d < q.d; });
  out.eps_star = best->eps;
  out.d_min = best->d;
  out.boundary = out.eps_star - options.lo <= options.tol || options.hi - out.eps_star <= options.tol;
  return out;
}

EpsilonStar find_epsilon_star(double g, const SearchOptions& options) {
  return find_epsilon_star(g, options, reference_curve(options));
}

RationalFit fit_rational(const std::vector<double>& g, const std::vector<double>& eps_star) {
  if (g.size() != eps_star.size()) throw ShapeError("fit_rational: grid sizes differ");
  if (g.size() < 4) throw ConfigError("fit_rational: need at least 4 grid points");
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double gi = g[i];
    if (!(gi > 0.0 && gi < 1.0)) throw ConfigError("fit_rational: g must lie in (0, 1)");
    if (!(eps_star[i] > 0.0)) throw ConfigError("fit_rational: eps_star must be positive");
    design(i, 0) = gi;
    design(i, 1) = -gi * gi;
    rhs(i) = (1.0 - gi) / eps_star[i];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < 2) throw FitError("fit_rational: degenerate grid, normal equations are singular");
  const Eigen::Vector2d coef = qr.solve(rhs);
  RationalFit fit;
  fit.a1 = coef(0);
  fit.a2 = coef(1);
  fit.rms = std::sqrt((design * coef - rhs).squaredNorm() / static_cast<double>(n));
  return fit;
}

double epsilon_star_model(double g, double a1, double a2) {
  const double denom = a1 * g - a2 * g * g;
  if (!(g > 0.0) || !(denom > 0.0)) {
    std::ostringstream os;
    os << "epsilon_star_model: model undefined at g=" << g;
    throw DomainError(os.str());
  }
  return (1.0 - g) / denom;
}

double g_star(double eps, double a1, double a2) {
  if (eps < 0.0) throw DomainError("g_star: eps must be non-negative");
  if (eps == 0.0) return 1.0;
  // ε a2 g² - (ε a1 + 1) g + 1 = 0; the small root, written to avoid cancellation.
  const double b = eps * a1 + 1.0;
  const double disc = b * b - 4.0 * eps * a2;
  if (disc < 0.0) throw DomainError("g_star: no real root");
  const double g = 2.0 / (b + std::sqrt(disc));
  if (!(g > 0.0 && g <= 1.0)) throw DomainError("g_star: root outside (0, 1]");
  return g;
}

std::vector<double> CalibrationResult::eps_star() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.eps_star);
  return out;
}

bool CalibrationResult::any_boundary() const {
  return std::any_of(points.begin(), points.end(), [](const EpsilonStar& p) { return p.boundary; });
}

std::vector<double> default_g_grid() { return {0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}; }

CalibrationResult run_calibration(const std::vector<double>& g_grid, const SearchOptions& options,
                                  int threads) {
  const EntanglementCurve reference = reference_curve(options);
  CalibrationResult result;
  result.g_grid = g_grid;
  result.points = parallel::parallel_map(g_grid.size(), threads, [&](std::size_t i) {
    return find_epsilon_star(g_grid[i], options, reference);
  });
  result.fit = fit_rational(g_grid, result.eps_star());
  for (std::size_t i = 0; i < g_grid.size(); ++i) {
    const double gi = g_grid[i];
    const double es = result.points[i].eps_star;
    result.residuals.push_back(result.fit.a1 * gi - result.fit.a2 * gi * gi - (1.0 - gi) / es);
    result.roundtrip_g.push_back(g_star(es, result.fit.a1, result.fit.a2));
  }
  return result;
}

std::vector<MimicryPoint> mimicry_curve(const std::vector<double>& eps_grid, double a1, double a2,
                                        const SearchOptions& options, int threads) {
  const EntanglementCurve reference = reference_curve(options);
  return parallel::parallel_map(eps_grid.size(), threads, [&](std::size_t i) {
    MimicryPoint p;
    p.eps = eps_grid[i];
    p.g = g_star(p.eps, a1, a2);
    p.d = deviation(qubit_lab::entanglement_curve(p.g, p.eps, options.T, options.dt), reference);
    return p;
  });
}

}  // namespace nlqm::calibration
