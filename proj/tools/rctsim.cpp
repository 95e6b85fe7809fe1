// rctsim: run the Monte Carlo grid and render RMSE charts.
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rctsim/commands.hpp"

namespace {

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> names;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) names.push_back(item);
  }
  return names;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo benchmark of ATE estimators in randomized experiments"};
  app.require_subcommand(1);

  rctsim::SimulateArgs sim;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::string> out_dir;
  auto* simulate = app.add_subcommand("simulate", "Run the simulation grid, write CSVs");
  simulate->add_option("--config", config_path, "Config file")->required();
  simulate->add_option("--seed", seed, "Master seed (overrides SIM_SEED and the file)");
  simulate->add_option("--workers", workers, "Worker threads (overrides SIM_WORKERS)");
  simulate->add_option("--out-dir", out_dir, "Directory for replications.csv and aggregate.csv");

  rctsim::ReportArgs rep;
  std::string in_path, out_path, omit;
  auto* report = app.add_subcommand("report", "Render one SVG chart per experiment");
  report->add_option("--in", in_path, "aggregate.csv")->required();
  report->add_option("--out", out_path, "Output directory")->required();
  report->add_flag("--zoom-true-pi", rep.options.zoom_true_pi,
                   "Only estimators that use the true propensity");
  report->add_option("--omit", omit, "Comma-separated estimator names to leave out");
  report->add_flag("--log-y", rep.options.log_y, "Log-scale RMSE axis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : rctsim::kExitConfig;
  }

  if (*simulate) {
    sim.config_path = config_path;
    sim.seed = seed;
    sim.workers = workers;
    if (out_dir) sim.out_dir = *out_dir;
    return rctsim::cmd_simulate(sim, std::cerr);
  }
  rep.in = in_path;
  rep.out = out_path;
  rep.options.omit = split_names(omit);
  return rctsim::cmd_report(rep, std::cerr);
}
