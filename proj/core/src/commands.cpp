#include "rctsim/commands.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>

#include "rctsim/config.hpp"
#include "rctsim/csv.hpp"
#include "rctsim/error.hpp"

namespace rctsim {

namespace {

template <typename Int>
Int env_integer(const char* name, const std::string& value) {
  Int out{};
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size()) {
    throw Error(ErrorKind::ConfigParse,
                std::string(name) + ": expected a non-negative integer, got '" + value + "'");
  }
  return out;
}

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::IoFailure, "cannot open '" + path.string() + "' for writing");
  writer(out);
  out.close();
  if (!out) throw Error(ErrorKind::IoFailure, "failed writing '" + path.string() + "'");
}

}  // namespace

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ConfigParse:
    case ErrorKind::UnknownEstimator:
      return kExitConfig;
    case ErrorKind::IoFailure:
    case ErrorKind::MalformedCsv:
      return kExitIo;
    default:
      return kExitFailure;
  }
}

EnvLookup process_env() {
  return [](const char* name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name)) return std::string(v);
    return std::nullopt;
  };
}

int cmd_simulate(const SimulateArgs& args, std::ostream& log, const EnvLookup& env) {
  try {
    RunConfig config = load_run_config(args.config_path);
    McConfig& mc = config.mc;

    if (const auto s = env ? env("SIM_SEED") : std::nullopt) {
      mc.master_seed = env_integer<std::uint64_t>("SIM_SEED", *s);
    }
    if (const auto w = env ? env("SIM_WORKERS") : std::nullopt) {
      mc.workers = env_integer<std::size_t>("SIM_WORKERS", *w);
    }
    if (args.seed) mc.master_seed = *args.seed;
    if (args.workers) mc.workers = *args.workers;
    validate(mc);

    const std::filesystem::path out_dir =
        args.out_dir ? *args.out_dir : config.out_dir.value_or(".");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
      throw Error(ErrorKind::IoFailure, "cannot create '" + out_dir.string() + "': " + ec.message());
    }

    const GridResult result = run_grid(mc, [&log](const ProgressEvent& e) {
      log << "cell " << e.cells_done << "/" << e.cells_total << " (experiment " << e.experiment
          << ", n = " << e.n << ")\n";
    });

    write_file(out_dir / "replications.csv",
               [&](std::ostream& out) { write_replications_csv(out, result.rows); });
    write_file(out_dir / "aggregate.csv",
               [&](std::ostream& out) { write_aggregate_csv(out, result.report); });
    log << "wrote " << result.rows.size() << " replication rows and " << result.report.size()
        << " aggregate rows to " << out_dir.string() << "\n";
    return kExitOk;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

int cmd_report(const ReportArgs& args, std::ostream& log) {
  try {
    std::ifstream in(args.in, std::ios::binary);
    if (!in) throw Error(ErrorKind::IoFailure, "cannot read '" + args.in.string() + "'");
    const auto entries = read_aggregate_csv(in);
    for (const auto& path : write_report(entries, args.out, args.options)) {
      log << "wrote " << path.string() << "\n";
    }
    return kExitOk;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

}  // namespace rctsim
