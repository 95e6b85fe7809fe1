#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>

#include "rctsim/error.hpp"
#include "rctsim/svg_report.hpp"

namespace rctsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;

/// Maps an error kind to the process exit code.
int exit_code_for(ErrorKind kind) noexcept;

struct SimulateArgs {
  std::filesystem::path config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::filesystem::path> out_dir;
};

/// Environment lookup; returns nullopt when unset.
using EnvLookup = std::function<std::optional<std::string>(const char*)>;

EnvLookup process_env();

/// Settings precedence: command line, then SIM_SEED / SIM_WORKERS, then file.
/// Writes replications.csv and aggregate.csv into the output directory
/// (default: current directory).
int cmd_simulate(const SimulateArgs& args, std::ostream& log,
                 const EnvLookup& env = process_env());

struct ReportArgs {
  std::filesystem::path in;
  std::filesystem::path out;
  ReportOptions options;
};

int cmd_report(const ReportArgs& args, std::ostream& log);

}  // namespace rctsim
