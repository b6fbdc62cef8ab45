#include "nlqm_cli/config.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <system_error>

#include "nlqm/calibration.hpp"
#include "nlqm/errors.hpp"
#include "nlqm/oscillator_lab.hpp"
#include "nlqm/physical.hpp"

namespace nlqm::cli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<KeySpec> with_common(std::vector<KeySpec> keys) {
  keys.insert(keys.begin(), {
                                {"out", Kind::string, "output directory"},
                                {"dt", Kind::number, "integration step"},
                                {"T", Kind::number, "run length"},
                                {"threads", Kind::integer, "worker threads, 0 for NLQM_THREADS or 1"},
                            });
  return keys;
}

const std::map<std::string, std::vector<KeySpec>>& key_table() {
  static const std::map<std::string, std::vector<KeySpec>> table = {
      {"entangle", with_common({
                       {"g", Kind::number_list, "coupling strengths"},
                       {"eps", Kind::number_list, "nonlinear strengths"},
                       {"method", Kind::string, "trotter or rk4"},
                   })},
      {"calibrate", with_common({
                        {"g_grid", Kind::number_list, "couplings in (0, 1)"},
                        {"lo", Kind::number, "lower end of the eps search window"},
                        {"hi", Kind::number, "upper end of the eps search window"},
                        {"tol", Kind::number, "golden-section bracket tolerance"},
                        {"scan_points", Kind::integer, "coarse scan points"},
                        {"deviation_eps", Kind::number_list, "eps values for d(eps) at g*(eps)"},
                        {"check_roundtrip", Kind::boolean, "verify g* recovery to 2%"},
                    })},
      {"oscillator", with_common({
                         {"omega0", Kind::number, "bare frequency"},
                         {"eps", Kind::number, "nonlinear strength"},
                         {"beta_abs", Kind::number, "|beta|, with beta = i|beta|"},
                         {"alpha0_grid", Kind::number_list, "initial displacements"},
                         {"truncation", Kind::integer, "Fock truncation N"},
                         {"alpha_max", Kind::number, "largest amplitude the truncation must hold"},
                     })},
      {"gcs", with_common({
                  {"omega0", Kind::number, "bare frequency"},
                  {"eps", Kind::number, "nonlinear strength"},
                  {"beta_abs", Kind::number, "|beta|, with beta = i|beta|"},
                  {"alpha0", Kind::number, "initial displacement"},
                  {"truncation", Kind::integer, "Fock truncation N"},
                  {"alpha_max", Kind::number, "largest amplitude the truncation must hold"},
                  {"compare_fock", Kind::boolean, "run the Fock-space comparison"},
                  {"compare_eps", Kind::number_list, "eps values of the comparison"},
              })},
      {"physical", {
                       {"out", Kind::string, "output directory"},
                       {"R1", Kind::number, "radius of sphere 1, m"},
                       {"R2", Kind::number, "radius of sphere 2, m"},
                       {"rho", Kind::number, "mass density, kg/m^3"},
                       {"r", Kind::number, "separation, m"},
                       {"delta_x", Kind::number, "branch separation, m"},
                       {"eps_d", Kind::number, "dielectric constant"},
                       {"n_th", Kind::number, "mean thermal phonon number"},
                       {"a1", Kind::number, "fit coefficient a1"},
                       {"a2", Kind::number, "fit coefficient a2"},
                   }},
  };
  return table;
}

bool matches(Kind kind, const json& v) {
  switch (kind) {
    case Kind::number:
      return v.is_number();
    case Kind::integer:
      return v.is_number_integer();
    case Kind::boolean:
      return v.is_boolean();
    case Kind::string:
      return v.is_string();
    case Kind::number_list:
      if (!v.is_array()) return false;
      for (const json& x : v) {
        if (!x.is_number()) return false;
      }
      return true;
  }
  return false;
}

const char* kind_name(Kind kind) {
  switch (kind) {
    case Kind::number:
      return "a number";
    case Kind::integer:
      return "an integer";
    case Kind::boolean:
      return "a boolean";
    case Kind::string:
      return "a string";
    case Kind::number_list:
      return "an array of numbers";
  }
  return "?";
}

const KeySpec* find_key(const std::string& command, const std::string& key) {
  for (const KeySpec& k : allowed_keys(command)) {
    if (k.name == key) return &k;
  }
  return nullptr;
}

void check_value(const std::string& command, const std::string& key, const json& value) {
  const KeySpec* spec = find_key(command, key);
  if (spec == nullptr) throw ConfigError(command + ": unknown config key '" + key + "'");
  if (!matches(spec->kind, value)) {
    throw ConfigError(command + ": key '" + key + "' must be " + kind_name(spec->kind));
  }
}

}  // namespace

const std::vector<KeySpec>& allowed_keys(const std::string& command) {
  const auto it = key_table().find(command);
  if (it == key_table().end()) throw ConfigError("no config schema for command '" + command + "'");
  return it->second;
}

json default_config(const std::string& command) {
  json c;
  if (command == "physical") {
    const physical::PhysicalScenario s = physical::diamond_scenario();
    c = {{"out", "out/physical"}, {"R1", s.R1},   {"R2", s.R2},
         {"rho", s.rho},          {"r", s.r},     {"delta_x", s.delta_x},
         {"eps_d", s.eps_d},      {"n_th", s.n_th}, {"a1", calibration::kReferenceA1},
         {"a2", calibration::kReferenceA2}};
    return c;
  }
  c["out"] = "out/" + command;
  c["threads"] = 0;
  if (command == "entangle") {
    c["T"] = kTwoPi;
    c["dt"] = 1e-3;
    c["g"] = {1.0};
    c["eps"] = {0.0, 0.2, 0.4};
    c["method"] = "trotter";
  } else if (command == "calibrate") {
    const calibration::SearchOptions o;
    c["T"] = o.T;
    c["dt"] = o.dt;
    c["g_grid"] = calibration::default_g_grid();
    c["lo"] = o.lo;
    c["hi"] = o.hi;
    c["tol"] = o.tol;
    c["scan_points"] = o.scan_points;
    std::vector<double> eps;
    for (int k = 0; k <= 20; ++k) eps.push_back(0.125 * k);
    c["deviation_eps"] = eps;
    c["check_roundtrip"] = false;
  } else if (command == "oscillator" || command == "gcs") {
    const oscillator_lab::OscillatorParams p;
    c["omega0"] = p.omega0;
    c["eps"] = p.eps;
    c["beta_abs"] = std::abs(p.beta);
    c["truncation"] = p.fock.truncation;
    c["alpha_max"] = p.fock.max_amplitude;
    if (command == "oscillator") {
      c["T"] = oscillator_lab::default_T(p.omega0);
      c["dt"] = oscillator_lab::default_dt(p.omega0);
      c["alpha0_grid"] = oscillator_lab::default_alpha0_grid();
    } else {
      c["T"] = kTwoPi / p.omega0;
      c["dt"] = 1e-3;
      c["alpha0"] = 0.05;
      c["compare_fock"] = false;
      c["compare_eps"] = {0.04, 0.02, 0.01};
    }
  } else {
    throw ConfigError("no config schema for command '" + command + "'");
  }
  return c;
}

void validate_config(const std::string& command, const json& config) {
  if (!config.is_object()) throw ConfigError(command + ": config must be a JSON object");
  for (const auto& [key, value] : config.items()) check_value(command, key, value);
}

json load_config(const std::string& command, const std::filesystem::path& file) {
  json c = default_config(command);
  if (file.empty()) return c;
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file " + file.string());
  json user;
  try {
    user = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file " + file.string() + ": " + e.what());
  }
  validate_config(command, user);
  c.update(user);
  return c;
}

void set_key(const std::string& command, json& config, const std::string& key, json value) {
  check_value(command, key, value);
  config[key] = std::move(value);
}

std::string run_label(const std::string& command, const json& config) {
  json material = config;
  material.erase("out");
  material.erase("threads");
  const std::string text = command + "\n" + material.dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) {
    out[k] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string short_num(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (res.ec != std::errc{}) return "nan";
  return std::string(buf.data(), res.ptr);
}

std::vector<double> number_list(const json& config, const std::string& key) {
  std::vector<double> out;
  for (const json& x : config.at(key)) out.push_back(x.get<double>());
  return out;
}

}  // namespace nlqm::cli
