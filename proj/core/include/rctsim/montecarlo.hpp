#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rctsim/dgp.hpp"
#include "rctsim/roster.hpp"
#include "rctsim/types.hpp"

namespace rctsim {

struct McConfig {
  std::vector<int> experiments{1, 2, 3};
  std::vector<std::size_t> n_grid{50, 100, 200, 500, 1000, 2000, 5000};
  std::size_t reps = 500;
  std::uint64_t master_seed = 20210701;
  std::vector<EstimatorConfig> roster;  // empty is invalid; see default_mc_config
  EstimatorContext context;             // nuisance settings, alpha, clip, delta override
  std::size_t workers = 1;
};

/// Full roster with default settings.
McConfig default_mc_config();

/// Throws ConfigParse naming the offending field.
void validate(const McConfig& config);

/// Avalanche hash of (master, experiment, n, rep). Each stage is a bijection
/// of its input, so tuples differing in one coordinate never collide.
std::uint64_t derive_seed(std::uint64_t master_seed, int experiment, std::size_t n,
                          std::size_t rep_index) noexcept;

/// FNV-1a over the sample's units and propensities; used to assert that all
/// estimators in a replication saw the same data.
std::uint64_t sample_checksum(const Sample& sample) noexcept;

struct ReplicationRow {
  int experiment = 0;
  std::size_t n = 0;
  std::size_t rep_index = 0;
  std::string estimator;
  std::optional<double> estimate;  // missing when the estimator failed
  std::optional<double> ci_lower;
  std::optional<double> ci_upper;
  std::string flags;               // ';'-separated
  std::uint64_t sample_checksum = 0;
  double wall_time_seconds = 0.0;  // not serialised
};

struct McCell {
  int experiment = 0;  // label written to rows
  DgpSpec dgp;
  std::size_t n = 0;
};

/// One sample from the cell's law, then every roster estimator on that same
/// sample. Estimator failures become rows with a missing estimate and an
/// "error:<kind>" flag.
std::vector<ReplicationRow> run_replication(const McConfig& config, const McCell& cell,
                                            std::size_t rep_index);

struct McReportEntry {
  int experiment = 0;
  std::size_t n = 0;
  std::string estimator;
  PropensityUse category = PropensityUse::TruePropensity;
  std::size_t reps_used = 0;
  double bias = 0.0;
  double sd = 0.0;    // n - 1 denominator; 0 for a single replication
  double rmse = 0.0;  // sqrt(mean squared error), population mean over reps
  std::optional<double> coverage;
  std::optional<double> mean_ci_width;
};

/// Summarises the rows of one (experiment, n, estimator) cell against the
/// truth. Throws EmptyCell for no rows and DomainViolation for mixed cells.
/// When no row has an estimate, bias/sd/rmse are NaN and reps_used is 0.
McReportEntry aggregate(std::span<const ReplicationRow> rows, const TrueEstimands& truth);

struct ProgressEvent {
  int experiment = 0;
  std::size_t n = 0;
  std::size_t cells_done = 0;
  std::size_t cells_total = 0;
};

/// Called once per completed (experiment, n) cell, possibly out of order,
/// from a worker thread (calls are serialised).
using ProgressSink = std::function<void(const ProgressEvent&)>;

struct GridResult {
  std::vector<ReplicationRow> rows;     // sorted by (experiment, n, roster order, rep)
  std::vector<McReportEntry> report;    // one per (experiment, n, estimator)
};

/// Runs every (experiment, n, rep) replication across config.workers
/// threads. Output depends only on the configuration.
GridResult run_grid(const McConfig& config, const ProgressSink& progress = {});

}  // namespace rctsim
