#include "nlqm_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "nlqm/calibration.hpp"
#include "nlqm/errors.hpp"
#include "nlqm/gcs.hpp"
#include "nlqm/io.hpp"
#include "nlqm/oscillator_lab.hpp"
#include "nlqm/parallel.hpp"
#include "nlqm/physical.hpp"
#include "nlqm/qubit_lab.hpp"
#include "nlqm_cli/svg.hpp"

namespace nlqm::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

fs::path prepare_out(const json& config) {
  const fs::path out = config.at("out").get<std::string>();
  if (out.empty()) throw ConfigError("output directory must not be empty");
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw ConfigError("cannot create output directory " + out.string() + ": " + ec.message());
  return out;
}

int threads_of(const json& config) {
  const int t = config.at("threads").get<int>();
  return parallel::resolve_threads(t == 0 ? std::nullopt : std::optional<int>(t));
}

double positive(const json& config, const std::string& key) {
  const double v = config.at(key).get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("'" + key + "' must be positive");
  return v;
}

// Provenance lines shared by every CSV of a run.
std::vector<std::string> provenance(const std::string& command, const json& config) {
  json material = config;
  material.erase("out");
  material.erase("threads");
  return {"command=" + command + " label=" + run_label(command, config), "config=" + material.dump()};
}

void write_run_json(const fs::path& out, const std::string& command, const json& config) {
  json meta;
  meta["command"] = command;
  meta["label"] = run_label(command, config);
  json material = config;
  material.erase("out");
  material.erase("threads");
  meta["config"] = material;
  std::ofstream f(out / "run.json", std::ios::binary);
  f << meta.dump(2) << '\n';
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << j.dump(2) << '\n';
}

oscillator_lab::OscillatorParams oscillator_params(const json& config) {
  oscillator_lab::OscillatorParams p;
  p.omega0 = config.at("omega0").get<double>();
  p.eps = config.at("eps").get<double>();
  p.beta = Complex{0.0, config.at("beta_abs").get<double>()};
  p.fock = algebra::FockConfig{config.at("truncation").get<int>(), config.at("alpha_max").get<double>()};
  oscillator_lab::validate(p);
  algebra::validate(p.fock);
  return p;
}

std::string curve_file(double g, double eps) {
  return "entangle_g" + short_num(g) + "_eps" + short_num(eps) + ".csv";
}

}  // namespace

int cmd_entangle(const json& config, std::ostream& report) {
  const std::vector<double> gs = number_list(config, "g");
  const std::vector<double> epss = number_list(config, "eps");
  if (gs.empty()) throw ConfigError("entangle: empty g list");
  if (epss.empty()) throw ConfigError("entangle: empty eps list");
  const double T = positive(config, "T");
  const double dt = positive(config, "dt");
  const dynamics::Method method = dynamics::parse_method(config.at("method").get<std::string>());
  for (double g : gs) {
    if (g < 0.0) throw ConfigError("entangle: g must be non-negative");
  }
  for (double e : epss) {
    if (e < 0.0) throw ConfigError("entangle: eps must be non-negative");
  }
  const int threads = threads_of(config);
  const fs::path out = prepare_out(config);

  std::vector<std::pair<double, double>> work;
  for (double g : gs) {
    for (double e : epss) work.emplace_back(g, e);
  }
  const auto curves = parallel::parallel_map(work.size(), threads, [&](std::size_t i) {
    return qubit_lab::entanglement_curve(work[i].first, work[i].second, T, dt, method);
  });

  std::vector<fs::path> files;
  for (const qubit_lab::EntanglementCurve& c : curves) {
    io::CsvTable table;
    table.comments = provenance("entangle", config);
    table.comments.push_back("g=" + io::fmt(c.g) + " eps=" + io::fmt(c.eps) + " dt=" + io::fmt(c.dt) +
                             " T=" + io::fmt(T) + " method=" + dynamics::to_string(method));
    table.comments.push_back("max_norm_drift=" + io::fmt(c.max_norm_drift) +
                             " max_energy_drift=" + io::fmt(c.max_energy_drift));
    table.header = {"t", "E"};
    for (std::size_t k = 0; k < c.times.size(); ++k) table.rows.push_back({c.times[k], c.entropies[k]});
    files.push_back(out / curve_file(c.g, c.eps));
    io::write_csv(files.back(), table);
  }

  svg::Plot plot{"Entanglement entropy", "t", "E (bits)", false, {}};
  for (std::size_t i = 0; i < files.size(); ++i) {
    const io::CsvTable t = io::read_csv(files[i]);
    plot.series.push_back({"g=" + short_num(work[i].first) + " eps=" + short_num(work[i].second),
                           t.column("t"), t.column("E"), svg::Style::line});
  }
  svg::write(out / "entangle.svg", plot);
  write_run_json(out, "entangle", config);

  report << "g,eps,first_max_t,max_norm_drift,max_energy_drift\n";
  for (const qubit_lab::EntanglementCurve& c : curves) {
    std::string tmax = "none";
    try {
      tmax = io::fmt(qubit_lab::first_maximum_time(c));
    } catch (const InsufficientData&) {
    }
    report << short_num(c.g) << ',' << short_num(c.eps) << ',' << tmax << ','
           << io::fmt(c.max_norm_drift) << ',' << io::fmt(c.max_energy_drift) << '\n';
  }
  report << "wrote " << files.size() << " CSV files and entangle.svg to " << out.string() << '\n';
  return kExitOk;
}

int cmd_calibrate(const json& config, std::ostream& report) {
  calibration::SearchOptions opt;
  opt.T = positive(config, "T");
  opt.dt = positive(config, "dt");
  opt.lo = config.at("lo").get<double>();
  opt.hi = config.at("hi").get<double>();
  opt.tol = positive(config, "tol");
  opt.scan_points = config.at("scan_points").get<int>();
  const std::vector<double> grid = number_list(config, "g_grid");
  if (grid.size() < 4) throw ConfigError("calibrate: g_grid needs at least 4 points");
  for (double g : grid) {
    if (!(g > 0.0 && g < 1.0)) throw ConfigError("calibrate: g_grid values must lie in (0, 1)");
  }
  if (!(opt.lo < opt.hi) || opt.lo < 0.0) throw ConfigError("calibrate: need 0 <= lo < hi");
  if (opt.scan_points < 3) throw ConfigError("calibrate: scan_points must be at least 3");
  const std::vector<double> dev_eps = number_list(config, "deviation_eps");
  const bool roundtrip = config.at("check_roundtrip").get<bool>();
  const int threads = threads_of(config);
  const fs::path out = prepare_out(config);

  struct Outcome {
    std::optional<calibration::EpsilonStar> star;
    std::string error;
  };
  const qubit_lab::EntanglementCurve reference = calibration::reference_curve(opt);
  const auto outcomes = parallel::parallel_map(grid.size(), threads, [&](std::size_t i) {
    Outcome o;
    try {
      o.star = calibration::find_epsilon_star(grid[i], opt, reference);
    } catch (const NumericError& e) {
      o.error = e.what();
    }
    return o;
  });

  std::vector<double> ok_g, ok_eps;
  io::CsvTable stars;
  stars.comments = provenance("calibrate", config);
  stars.header = {"g", "eps_star", "d_min", "boundary"};
  std::vector<std::string> failures;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Outcome& o = outcomes[i];
    if (!o.star) {
      stars.comments.push_back("failed g=" + io::fmt(grid[i]) + ": " + o.error);
      failures.push_back(short_num(grid[i]));
      continue;
    }
    if (o.star->boundary) stars.comments.push_back("boundary g=" + io::fmt(grid[i]));
    stars.rows.push_back({grid[i], o.star->eps_star, o.star->d_min, o.star->boundary ? 1.0 : 0.0});
    ok_g.push_back(grid[i]);
    ok_eps.push_back(o.star->eps_star);
  }
  io::write_csv(out / "epsilon_star.csv", stars);
  write_run_json(out, "calibrate", config);

  report << "g,eps_star,d_min,boundary\n";
  for (const auto& row : stars.rows) {
    report << short_num(row[0]) << ',' << io::fmt(row[1]) << ',' << io::fmt(row[2]) << ','
           << (row[3] != 0.0 ? "yes" : "no") << '\n';
  }
  if (ok_g.size() < 4) {
    throw FitError("calibrate: fewer than 4 grid points succeeded; no fit written");
  }

  const calibration::RationalFit fit = calibration::fit_rational(ok_g, ok_eps);
  json fj;
  fj["label"] = run_label("calibrate", config);
  fj["a1"] = fit.a1;
  fj["a2"] = fit.a2;
  fj["rms"] = fit.rms;
  fj["points"] = ok_g.size();
  fj["reference_a1"] = calibration::kReferenceA1;
  fj["reference_a2"] = calibration::kReferenceA2;
  fj["a1_rel_deviation"] = fit.a1 / calibration::kReferenceA1 - 1.0;
  fj["a2_rel_deviation"] = fit.a2 / calibration::kReferenceA2 - 1.0;

  double worst_rt = 0.0;
  std::ostringstream rt;
  for (std::size_t i = 0; i < ok_g.size(); ++i) {
    double back = std::nan("");
    try {
      back = calibration::g_star(ok_eps[i], fit.a1, fit.a2);
    } catch (const DomainError&) {
    }
    const double rel = std::abs(back - ok_g[i]) / ok_g[i];
    worst_rt = std::isfinite(rel) ? std::max(worst_rt, rel) : rel;
    rt << short_num(ok_g[i]) << ',' << io::fmt(back) << ',' << io::fmt(rel) << '\n';
  }
  fj["roundtrip_max_rel_error"] = std::isfinite(worst_rt) ? json(worst_rt) : json(nullptr);
  write_json(out / "fit.json", fj);

  io::CsvTable curve;
  curve.comments = provenance("calibrate", config);
  curve.comments.push_back("a1=" + io::fmt(fit.a1) + " a2=" + io::fmt(fit.a2));
  curve.header = {"g", "eps_fit", "eps_reference"};
  for (int k = 0; k <= 80; ++k) {
    const double g = 0.15 + 0.01 * k;
    auto model = [g](double a1, double a2) {
      try {
        return calibration::epsilon_star_model(g, a1, a2);
      } catch (const DomainError&) {
        return std::nan("");
      }
    };
    curve.rows.push_back({g, model(fit.a1, fit.a2), model(calibration::kReferenceA1, calibration::kReferenceA2)});
  }
  io::write_csv(out / "fit_curve.csv", curve);

  std::vector<calibration::MimicryPoint> mimic;
  try {
    mimic = calibration::mimicry_curve(dev_eps, fit.a1, fit.a2, opt, threads);
  } catch (const DomainError& e) {
    throw NumericError(std::string("calibrate: g* undefined with the fitted coefficients: ") + e.what());
  }
  io::CsvTable dev;
  dev.comments = curve.comments;
  dev.header = {"eps", "g_star", "d"};
  for (const auto& m : mimic) dev.rows.push_back({m.eps, m.g, m.d});
  io::write_csv(out / "deviation.csv", dev);

  {
    const io::CsvTable s = io::read_csv(out / "epsilon_star.csv");
    const io::CsvTable c = io::read_csv(out / "fit_curve.csv");
    svg::Plot plot{"eps*(g)", "g", "eps*", false, {}};
    plot.series.push_back({"search", s.column("g"), s.column("eps_star"), svg::Style::points});
    plot.series.push_back({"fit", c.column("g"), c.column("eps_fit"), svg::Style::line});
    plot.series.push_back({"reference fit", c.column("g"), c.column("eps_reference"), svg::Style::dashed});
    svg::write(out / "epsilon_star.svg", plot);
    const io::CsvTable d = io::read_csv(out / "deviation.csv");
    svg::Plot dplot{"d(eps) at g*(eps)", "eps", "d", false, {}};
    dplot.series.push_back({"d", d.column("eps"), d.column("d"), svg::Style::line});
    svg::write(out / "deviation.svg", dplot);
  }

  report << "fit: a1=" << io::fmt(fit.a1) << " a2=" << io::fmt(fit.a2) << " rms=" << io::fmt(fit.rms)
         << " (reference a1=" << calibration::kReferenceA1 << " a2=" << calibration::kReferenceA2 << ")\n";
  if (!failures.empty()) {
    std::string list;
    for (const auto& f : failures) list += (list.empty() ? "" : ",") + f;
    throw NumericError("calibrate: search failed at g=" + list + " (partial results written)");
  }
  if (roundtrip) {
    report << "g,g_star_back,rel_error\n" << rt.str();
    if (!(worst_rt <= 0.02)) {
      report << "roundtrip: FAIL (max rel error " << io::fmt(worst_rt) << ")\n";
      return kExitNumeric;
    }
    report << "roundtrip: PASS (max rel error " << io::fmt(worst_rt) << ")\n";
  }
  return kExitOk;
}

int cmd_oscillator(const json& config, std::ostream& report) {
  const oscillator_lab::OscillatorParams p = oscillator_params(config);
  const double T = positive(config, "T");
  const double dt = positive(config, "dt");
  const std::vector<double> grid = number_list(config, "alpha0_grid");
  if (grid.empty()) throw ConfigError("oscillator: empty alpha0_grid");
  for (double a : grid) {
    if (!(a > 0.0)) throw ConfigError("oscillator: alpha0 values must be positive");
  }
  const int threads = threads_of(config);
  const fs::path out = prepare_out(config);

  const auto points = oscillator_lab::frequency_shift_curve(p, grid, T, dt, threads);
  const double r = p.eps / p.omega0;
  io::CsvTable table;
  table.comments = provenance("oscillator", config);
  table.header = {"alpha0", "omega", "omega_err", "normalized_shift", "predicted_small", "predicted_large"};
  for (const auto& s : points) {
    table.rows.push_back({s.alpha0, s.omega, s.omega_err, s.normalized_shift,
                          gcs::predicted_shift(gcs::Regime::small, p, s.alpha0) / r,
                          gcs::predicted_shift(gcs::Regime::large, p, s.alpha0) / r});
  }
  io::write_csv(out / "shifts.csv", table);

  io::CsvTable pred;
  pred.comments = provenance("oscillator", config);
  pred.header = {"alpha0", "predicted_small", "predicted_large"};
  const double lo = std::log10(*std::min_element(grid.begin(), grid.end()));
  const double hi = std::log10(*std::max_element(grid.begin(), grid.end()));
  for (int k = 0; k <= 120; ++k) {
    const double a = std::pow(10.0, lo + (hi - lo) * k / 120.0);
    pred.rows.push_back({a, gcs::predicted_shift(gcs::Regime::small, p, a) / r,
                         gcs::predicted_shift(gcs::Regime::large, p, a) / r});
  }
  io::write_csv(out / "shift_predictions.csv", pred);
  write_run_json(out, "oscillator", config);

  {
    const io::CsvTable s = io::read_csv(out / "shifts.csv");
    const io::CsvTable c = io::read_csv(out / "shift_predictions.csv");
    svg::Plot plot{"Normalized frequency shift", "alpha0", "(omega - omega0)/eps", true, {}};
    plot.series.push_back({"numeric", s.column("alpha0"), s.column("normalized_shift"), svg::Style::points});
    plot.series.push_back({"small amplitude", c.column("alpha0"), c.column("predicted_small"), svg::Style::dashed});
    plot.series.push_back({"large amplitude", c.column("alpha0"), c.column("predicted_large"), svg::Style::line});
    svg::write(out / "shifts.svg", plot);
  }

  report << "alpha0,omega,omega_err,normalized_shift\n";
  for (const auto& s : points) {
    report << short_num(s.alpha0) << ',' << io::fmt(s.omega) << ',' << io::fmt(s.omega_err) << ','
           << io::fmt(s.normalized_shift) << '\n';
  }
  return kExitOk;
}

int cmd_gcs(const json& config, std::ostream& report) {
  const oscillator_lab::OscillatorParams p = oscillator_params(config);
  const double T = positive(config, "T");
  const double dt = positive(config, "dt");
  const double a0 = config.at("alpha0").get<double>();
  if (a0 < 0.0) throw ConfigError("gcs: alpha0 must be non-negative");
  const int threads = threads_of(config);
  const fs::path out = prepare_out(config);

  const gcs::GcsTrajectory tr = gcs::integrate_gcs(gcs::GcsPoint{a0, {}, {}}, p, T, dt);
  const gcs::SmallAmplitudeConstants consts = gcs::small_amplitude_constants(std::abs(p.beta));
  const std::vector<std::string> cols = {"t",         "re_alpha",  "im_alpha",  "re_theta0",
                                         "im_theta0", "re_theta1", "im_theta1"};
  io::CsvTable num, closed;
  num.comments = provenance("gcs", config);
  num.comments.push_back("integrated first-order coset equations");
  closed.comments = provenance("gcs", config);
  closed.comments.push_back("small-amplitude closed forms");
  num.header = cols;
  closed.header = cols;
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const double t = tr.times[k];
    const gcs::GcsPoint& q = tr.points[k];
    num.rows.push_back({t, q.alpha.real(), q.alpha.imag(), q.theta0.real(), q.theta0.imag(),
                        q.theta1.real(), q.theta1.imag()});
    const Complex a = gcs::small_amplitude_solution(a0, consts, p, t);
    const gcs::ThetaPair th = gcs::theta_solutions(t, a0, p.beta, p.eps, p.omega0);
    closed.rows.push_back({t, a.real(), a.imag(), th.theta0.real(), th.theta0.imag(), th.theta1.real(),
                           th.theta1.imag()});
  }
  io::write_csv(out / "gcs.csv", num);
  io::write_csv(out / "gcs_closed_form.csv", closed);
  {
    const io::CsvTable n = io::read_csv(out / "gcs.csv");
    const io::CsvTable c = io::read_csv(out / "gcs_closed_form.csv");
    svg::Plot plot{"Coset trajectory", "t", "Re alpha", false, {}};
    plot.series.push_back({"integrated", n.column("t"), n.column("re_alpha"), svg::Style::line});
    plot.series.push_back({"closed form", c.column("t"), c.column("re_alpha"), svg::Style::dashed});
    svg::write(out / "gcs.svg", plot);
  }

  if (config.at("compare_fock").get<bool>()) {
    const std::vector<double> eps_list = number_list(config, "compare_eps");
    if (eps_list.empty()) throw ConfigError("gcs: empty compare_eps list");
    const auto cmp = parallel::parallel_map(eps_list.size(), threads, [&](std::size_t i) {
      oscillator_lab::OscillatorParams q = p;
      q.eps = eps_list[i];
      return gcs::compare_with_fock(q, a0, T, dt);
    });
    io::CsvTable table;
    table.comments = provenance("gcs", config);
    table.header = {"eps", "rms", "ratio"};
    svg::Plot plot{"Coset minus Fock trajectory", "t", "Re alpha - <x>", false, {}};
    report << "eps,rms,ratio_to_previous\n";
    for (std::size_t i = 0; i < cmp.size(); ++i) {
      const double ratio = i == 0 ? std::nan("") : cmp[i - 1].rms / cmp[i].rms;
      table.rows.push_back({eps_list[i], cmp[i].rms, ratio});
      report << short_num(eps_list[i]) << ',' << io::fmt(cmp[i].rms) << ','
             << (i == 0 ? std::string("-") : io::fmt(ratio)) << '\n';
      io::CsvTable traj;
      traj.comments = provenance("gcs", config);
      traj.comments.push_back("eps=" + io::fmt(eps_list[i]));
      traj.header = {"t", "gcs_x", "fock_x"};
      for (std::size_t k = 0; k < cmp[i].times.size(); ++k) {
        traj.rows.push_back({cmp[i].times[k], cmp[i].gcs_x[k], cmp[i].fock_x[k]});
      }
      const fs::path file = out / ("fock_compare_eps" + short_num(eps_list[i]) + ".csv");
      io::write_csv(file, traj);
      const io::CsvTable back = io::read_csv(file);
      std::vector<double> diff = back.column("gcs_x");
      const std::vector<double> fx = back.column("fock_x");
      for (std::size_t k = 0; k < diff.size(); ++k) diff[k] -= fx[k];
      plot.series.push_back({"eps=" + short_num(eps_list[i]), back.column("t"), diff, svg::Style::line});
    }
    io::write_csv(out / "fock_compare.csv", table);
    svg::write(out / "fock_compare.svg", plot);
  }
  write_run_json(out, "gcs", config);
  report << "wrote gcs.csv (" << tr.times.size() << " samples) to " << out.string() << '\n';
  return kExitOk;
}

int cmd_physical(const json& config, std::ostream& report) {
  physical::PhysicalScenario s;
  s.R1 = config.at("R1").get<double>();
  s.R2 = config.at("R2").get<double>();
  s.rho = config.at("rho").get<double>();
  s.r = config.at("r").get<double>();
  s.delta_x = config.at("delta_x").get<double>();
  s.eps_d = config.at("eps_d").get<double>();
  s.n_th = config.at("n_th").get<double>();
  const double a1 = config.at("a1").get<double>();
  const double a2 = config.at("a2").get<double>();
  physical::validate(s);
  const fs::path out = prepare_out(config);
  const physical::ScenarioReport rep = physical::evaluate(s, a1, a2);

  auto both = [](double w) { return json{{"rad_per_s", w}, {"rad_per_s_over_2pi", w / kTwoPi}}; };
  json j;
  j["label"] = run_label("physical", config);
  j["scenario"] = {{"R1", s.R1}, {"R2", s.R2}, {"rho", s.rho}, {"r", s.r},
                   {"delta_x", s.delta_x}, {"eps_d", s.eps_d}, {"n_th", s.n_th}};
  j["coefficients"] = {{"a1", a1}, {"a2", a2}};
  j["M1_kg"] = rep.M1;
  j["M2_kg"] = rep.M2;
  j["omega_g"] = both(rep.omega_g);
  j["omega_c"] = both(rep.omega_c);
  j["g"] = rep.g;
  j["eps_required"] = rep.eps_required ? both(*rep.eps_required) : json(nullptr);
  j["eps_star_at_quoted_g"] = rep.eps_star_quoted_g;
  j["eps_required_at_quoted_g"] = both(rep.eps_required_quoted_g);
  j["quoted"] = {{"omega_g", physical::kQuotedOmegaG}, {"omega_c", physical::kQuotedOmegaC}};
  j["omega_g_mismatch"] = rep.omega_g_mismatch;
  j["omega_c_mismatch"] = rep.omega_c_mismatch;
  j["measurements_at_alpha0_1"] = rep.measurements;
  write_json(out / "physical.json", j);

  auto line = [&](const std::string& name, double w) {
    report << std::left << std::setw(28) << name << io::fmt(w) << " rad/s  (" << io::fmt(w / kTwoPi)
           << " rad/s / 2pi)\n";
  };
  report << std::left << std::setw(28) << "M1, M2 [kg]" << io::fmt(rep.M1) << ", " << io::fmt(rep.M2) << '\n';
  line("omega_g", rep.omega_g);
  line("omega_c", rep.omega_c);
  report << std::left << std::setw(28) << "g = omega_c/omega_g" << io::fmt(rep.g) << '\n';
  if (rep.eps_required) {
    line("eps required", *rep.eps_required);
  } else {
    report << std::left << std::setw(28) << "eps required" << "none (omega_c >= omega_g)\n";
  }
  report << std::left << std::setw(28) << "eps*(0.096)" << io::fmt(rep.eps_star_quoted_g) << '\n';
  line("eps required at g=0.096", rep.eps_required_quoted_g);
  report << "omega_g vs quoted " << physical::kQuotedOmegaG << ": "
         << (rep.omega_g_mismatch ? "MISMATCH" : "consistent") << '\n';
  report << "omega_c vs quoted " << physical::kQuotedOmegaC << ": "
         << (rep.omega_c_mismatch ? "MISMATCH" : "consistent") << '\n';
  report << std::left << std::setw(28) << "measurements (alpha0=1)" << io::fmt(rep.measurements) << '\n';
  return kExitOk;
}

int cmd_lemma_check(const std::string& out, std::ostream& report) {
  io::CsvTable table;
  table.comments = {"command=lemma-check"};
  table.header = {"nu", "b", "re_c", "im_c", "re_exact", "im_exact", "re_quad", "im_quad", "rel_error"};
  double worst = 0.0;
  report << "nu,b,c,rel_error\n";
  for (int nu = 0; nu <= 3; ++nu) {
    for (double b : {0.5, 1.0, 2.0}) {
      for (Complex c : {Complex{0.0, 0.0}, Complex{1.0, 0.0}, Complex{0.3, -0.2}}) {
        const Complex exact = gcs::lemma_integral_closed(nu, b, c);
        const gcs::QuadratureResult q = gcs::lemma_integral_quadrature(nu, b, c);
        const double rel = std::abs(q.value - exact) / std::max(std::abs(exact), 1.0);
        worst = std::max(worst, rel);
        table.rows.push_back({static_cast<double>(nu), b, c.real(), c.imag(), exact.real(), exact.imag(),
                              q.value.real(), q.value.imag(), rel});
        report << nu << ',' << short_num(b) << ",(" << short_num(c.real()) << ',' << short_num(c.imag())
               << ")," << io::fmt(rel) << '\n';
      }
    }
  }
  if (!out.empty()) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw ConfigError("cannot create output directory " + out);
    io::write_csv(fs::path(out) / "lemma.csv", table);
  }
  const bool pass = worst <= 1e-6;
  report << "max relative error " << io::fmt(worst) << ": " << (pass ? "PASS" : "FAIL") << '\n';
  return pass ? kExitOk : kExitNumeric;
}

}  // namespace nlqm::cli
