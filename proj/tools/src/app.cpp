#include <exception>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlqm/errors.hpp"
#include "nlqm_cli/commands.hpp"

namespace nlqm::cli {

namespace {

struct Common {
  std::string config;
  std::string out;
  double dt = 0.0;
  double T = 0.0;
  int threads = 0;
  CLI::Option* out_opt = nullptr;
  CLI::Option* dt_opt = nullptr;
  CLI::Option* T_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON config file")->check(CLI::ExistingFile);
  c.out_opt = sub->add_option("--out", c.out, "output directory");
  c.dt_opt = sub->add_option("--dt", c.dt, "integration step");
  c.T_opt = sub->add_option("--T", c.T, "run length");
  c.threads_opt = sub->add_option("--threads", c.threads, "worker threads (fallback NLQM_THREADS)");
}

void apply_common(const std::string& command, const Common& c, json& config) {
  if (c.out_opt->count()) set_key(command, config, "out", c.out);
  if (c.dt_opt->count()) set_key(command, config, "dt", c.dt);
  if (c.T_opt->count()) set_key(command, config, "T", c.T);
  if (c.threads_opt->count()) {
    if (c.threads < 1) throw ConfigError("--threads must be at least 1");
    set_key(command, config, "threads", c.threads);
  }
}

// CLI11 turns an empty token into 0; lists are parsed here so "" is rejected.
std::vector<double> parse_list(const std::string& flag, const std::vector<std::string>& tokens) {
  std::vector<double> out;
  for (const std::string& t : tokens) {
    if (t.empty()) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size()) throw ConfigError(flag + ": '" + t + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError(flag + ": empty list");
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonlinear quantum mechanics experiments: entanglement boost, calibration, oscillator shifts"};
  app.name("nlqm");
  app.require_subcommand(1);

  Common ent_c, cal_c, osc_c, gcs_c;
  std::vector<std::string> ent_g, ent_eps;
  std::string ent_method;
  CLI::App* ent = app.add_subcommand("entangle", "entanglement curves E(t) for (g, eps) pairs");
  add_common(ent, ent_c);
  auto* ent_g_opt = ent->add_option("--g", ent_g, "couplings, comma separated")->delimiter(',');
  auto* ent_eps_opt = ent->add_option("--eps", ent_eps, "nonlinear strengths, comma separated")->delimiter(',');
  auto* ent_method_opt = ent->add_option("--method", ent_method, "trotter or rk4");

  std::vector<std::string> cal_grid;
  int cal_scan = 0;
  double cal_tol = 0.0;
  bool cal_rt = false;
  CLI::App* cal = app.add_subcommand("calibrate", "eps*(g) search, rational fit and d(eps)");
  add_common(cal, cal_c);
  auto* cal_grid_opt = cal->add_option("--g-grid", cal_grid, "couplings in (0,1), comma separated")->delimiter(',');
  auto* cal_scan_opt = cal->add_option("--scan-points", cal_scan, "coarse scan points");
  auto* cal_tol_opt = cal->add_option("--tol", cal_tol, "golden-section tolerance");
  cal->add_flag("--check-roundtrip", cal_rt, "verify g* recovery to 2%");

  double osc_eps = 0.0, osc_beta = 0.0, osc_w0 = 0.0;
  std::vector<std::string> osc_grid;
  CLI::App* osc = app.add_subcommand("oscillator", "frequency shift versus initial displacement");
  add_common(osc, osc_c);
  auto* osc_eps_opt = osc->add_option("--eps", osc_eps, "nonlinear strength");
  auto* osc_beta_opt = osc->add_option("--beta", osc_beta, "|beta|");
  auto* osc_w0_opt = osc->add_option("--omega0", osc_w0, "bare frequency");
  auto* osc_grid_opt = osc->add_option("--alpha0", osc_grid, "displacements, comma separated")->delimiter(',');

  double gcs_eps = 0.0, gcs_beta = 0.0, gcs_a0 = 0.0;
  bool gcs_cmp = false;
  CLI::App* gc = app.add_subcommand("gcs", "first-order coset trajectory, optional Fock comparison");
  add_common(gc, gcs_c);
  auto* gcs_eps_opt = gc->add_option("--eps", gcs_eps, "nonlinear strength");
  auto* gcs_beta_opt = gc->add_option("--beta", gcs_beta, "|beta|");
  auto* gcs_a0_opt = gc->add_option("--alpha0", gcs_a0, "initial displacement");
  gc->add_flag("--compare-fock", gcs_cmp, "RMS mismatch against the Fock-space run");

  std::string phys_scenario, phys_out;
  CLI::App* phys = app.add_subcommand("physical", "gravitational and Casimir rates for a scenario");
  phys->add_option("--scenario,--config", phys_scenario, "scenario JSON")->check(CLI::ExistingFile);
  auto* phys_out_opt = phys->add_option("--out", phys_out, "output directory");

  std::string lemma_out;
  CLI::App* lemma = app.add_subcommand("lemma-check", "closed form against quadrature of the plane integral");
  lemma->add_option("--out", lemma_out, "write lemma.csv here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    if (ent->parsed()) {
      json c = load_config("entangle", ent_c.config);
      apply_common("entangle", ent_c, c);
      if (ent_g_opt->count()) set_key("entangle", c, "g", parse_list("--g", ent_g));
      if (ent_eps_opt->count()) set_key("entangle", c, "eps", parse_list("--eps", ent_eps));
      if (ent_method_opt->count()) set_key("entangle", c, "method", ent_method);
      return cmd_entangle(c, out);
    }
    if (cal->parsed()) {
      json c = load_config("calibrate", cal_c.config);
      apply_common("calibrate", cal_c, c);
      if (cal_grid_opt->count()) set_key("calibrate", c, "g_grid", parse_list("--g-grid", cal_grid));
      if (cal_scan_opt->count()) set_key("calibrate", c, "scan_points", cal_scan);
      if (cal_tol_opt->count()) set_key("calibrate", c, "tol", cal_tol);
      if (cal_rt) set_key("calibrate", c, "check_roundtrip", true);
      return cmd_calibrate(c, out);
    }
    if (osc->parsed()) {
      json c = load_config("oscillator", osc_c.config);
      apply_common("oscillator", osc_c, c);
      if (osc_eps_opt->count()) set_key("oscillator", c, "eps", osc_eps);
      if (osc_beta_opt->count()) set_key("oscillator", c, "beta_abs", osc_beta);
      if (osc_w0_opt->count()) set_key("oscillator", c, "omega0", osc_w0);
      if (osc_grid_opt->count()) set_key("oscillator", c, "alpha0_grid", parse_list("--alpha0", osc_grid));
      return cmd_oscillator(c, out);
    }
    if (gc->parsed()) {
      json c = load_config("gcs", gcs_c.config);
      apply_common("gcs", gcs_c, c);
      if (gcs_eps_opt->count()) set_key("gcs", c, "eps", gcs_eps);
      if (gcs_beta_opt->count()) set_key("gcs", c, "beta_abs", gcs_beta);
      if (gcs_a0_opt->count()) set_key("gcs", c, "alpha0", gcs_a0);
      if (gcs_cmp) set_key("gcs", c, "compare_fock", true);
      return cmd_gcs(c, out);
    }
    if (phys->parsed()) {
      json c = load_config("physical", phys_scenario);
      if (phys_out_opt->count()) set_key("physical", c, "out", phys_out);
      return cmd_physical(c, out);
    }
    if (lemma->parsed()) return cmd_lemma_check(lemma_out, out);
  } catch (const NumericError& e) {
    err << "nlqm: numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const Error& e) {
    err << "nlqm: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const json::exception& e) {
    err << "nlqm: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "nlqm: file error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace nlqm::cli
