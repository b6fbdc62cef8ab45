#pragma once

#include <iosfwd>
#include <string>

#include "nlqm_cli/config.hpp"

namespace nlqm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

// Each command takes a validated config, writes its artifacts under config["out"]
// and a short report to `report`. Failures surface as nlqm exceptions.
int cmd_entangle(const json& config, std::ostream& report);
int cmd_calibrate(const json& config, std::ostream& report);
int cmd_oscillator(const json& config, std::ostream& report);
int cmd_gcs(const json& config, std::ostream& report);
int cmd_physical(const json& config, std::ostream& report);
// Empty `out` skips the CSV.
int cmd_lemma_check(const std::string& out, std::ostream& report);

// Parses argv, dispatches, maps exceptions to exit codes (2 config, 3 numeric).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nlqm::cli
