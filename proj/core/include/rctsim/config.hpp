#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "rctsim/montecarlo.hpp"

namespace rctsim {

/// Simulation settings plus the output directory named in the file.
struct RunConfig {
  McConfig mc = default_mc_config();
  std::optional<std::filesystem::path> out_dir;
};

/// Parses the sectioned key = value format (grammar in README.md) and
/// validates the result. Throws ConfigParse with the line number or field.
RunConfig parse_run_config(std::string_view text);

/// Throws IoFailure when the file cannot be read.
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace rctsim
