#include "nlqm/parallel.hpp"

#include <cstdlib>
#include <string>

#include "nlqm/errors.hpp"

namespace nlqm::parallel {

int resolve_threads(std::optional<int> flag) {
  if (flag) {
    if (*flag < 1) throw ConfigError("--threads must be at least 1");
    return *flag;
  }
  if (const char* env = std::getenv("NLQM_THREADS"); env && *env) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(env, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != std::string(env).size() || value < 1) {
      throw ConfigError(std::string("NLQM_THREADS must be a positive integer, got '") + env + "'");
    }
    return value;
  }
  return 1;
}

}  // namespace nlqm::parallel
