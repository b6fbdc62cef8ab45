#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace nlqm::cli {

using nlohmann::json;

enum class Kind { number, integer, boolean, string, number_list };

struct KeySpec {
  std::string name;
  Kind kind;
  std::string description;
};

// Accepted keys per command, in schema order. Throws ConfigError for an unknown command.
const std::vector<KeySpec>& allowed_keys(const std::string& command);

// Built-in defaults; every allowed key is present.
json default_config(const std::string& command);

// Rejects unknown keys and values of the wrong kind.
void validate_config(const std::string& command, const json& config);

// Defaults, overlaid by the file (if any), validated.
json load_config(const std::string& command, const std::filesystem::path& file);

// Overlays one key and revalidates it.
void set_key(const std::string& command, json& config, const std::string& key, json value);

// 16 hex digits of FNV-1a over the command and the config without "out" and "threads".
std::string run_label(const std::string& command, const json& config);

// Shortest round-trip representation, for file names and comments.
std::string short_num(double value);

std::vector<double> number_list(const json& config, const std::string& key);

}  // namespace nlqm::cli
