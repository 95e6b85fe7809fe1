#include "rctsim/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <exception>
#include <limits>
#include <mutex>
#include <set>
#include <thread>

#include "rctsim/error.hpp"
#include "rctsim/random.hpp"

namespace rctsim {

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::ConfigParse, "field '" + field + "': " + what);
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += ';';
    out += f;
  }
  return out;
}

}  // namespace

McConfig default_mc_config() {
  McConfig config;
  for (const auto name : canonical_estimator_names()) {
    config.roster.push_back(default_estimator_config(name));
  }
  return config;
}

void validate(const McConfig& config) {
  if (config.experiments.empty()) config_error("experiments", "must not be empty");
  std::set<int> seen_experiments;
  for (const int e : config.experiments) {
    if (e < 1 || e > 3) config_error("experiments", "values must be 1, 2 or 3");
    if (!seen_experiments.insert(e).second) config_error("experiments", "duplicate value");
  }
  if (config.n_grid.empty()) config_error("n_grid", "must not be empty");
  for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
    if (config.n_grid[i] == 0) config_error("n_grid", "sample sizes must be >= 1");
    if (i > 0 && config.n_grid[i] <= config.n_grid[i - 1]) {
      config_error("n_grid", "must be strictly ascending");
    }
  }
  if (config.reps == 0) config_error("reps", "must be >= 1");
  if (config.workers == 0) config_error("workers", "must be >= 1");
  const auto& ctx = config.context;
  if (!(ctx.alpha > 0.0 && ctx.alpha < 1.0)) config_error("alpha", "must lie in (0, 1)");
  if (!(ctx.ps_clip >= 0.0 && ctx.ps_clip < 0.5)) {
    config_error("ps_clip", "must lie in [0, 0.5)");
  }
  if (ctx.delta_override && !(*ctx.delta_override > 0.0 && *ctx.delta_override < 0.5)) {
    config_error("delta_override", "must lie in (0, 0.5)");
  }
  if (ctx.nuisance.forest.n_trees == 0) config_error("forest.n_trees", "must be >= 1");
  if (ctx.nuisance.forest.min_node_size == 0) {
    config_error("forest.min_node_size", "must be >= 1");
  }
  if (ctx.nuisance.logistic.max_iterations == 0) {
    config_error("logistic.max_iterations", "must be >= 1");
  }
  if (!(ctx.nuisance.logistic.tolerance > 0.0)) {
    config_error("logistic.tolerance", "must be positive");
  }
  if (config.roster.empty()) config_error("roster", "must name at least one estimator");
  std::set<std::string> names;
  for (const auto& e : config.roster) {
    if (!is_canonical_estimator(e.name)) config_error("roster", "unknown estimator '" + e.name + "'");
    if (!names.insert(e.name).second) config_error("roster", "duplicate estimator '" + e.name + "'");
  }
}

std::uint64_t derive_seed(std::uint64_t master_seed, int experiment, std::size_t n,
                          std::size_t rep_index) noexcept {
  std::uint64_t h = mix64(master_seed);
  h = hash_combine(h, static_cast<std::uint64_t>(experiment));
  h = hash_combine(h, static_cast<std::uint64_t>(n));
  return hash_combine(h, static_cast<std::uint64_t>(rep_index));
}

std::uint64_t sample_checksum(const Sample& sample) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 0x100000001b3ULL;
    }
  };
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto& o = sample.observations[i];
    feed(&o.w, sizeof o.w);
    const unsigned char xy[2] = {static_cast<unsigned char>(o.x),
                                 static_cast<unsigned char>(o.y)};
    feed(xy, 2);
    if (sample.true_propensity) feed(&(*sample.true_propensity)[i], sizeof(double));
  }
  return h;
}

std::vector<ReplicationRow> run_replication(const McConfig& config, const McCell& cell,
                                            std::size_t rep_index) {
  const std::uint64_t seed =
      derive_seed(config.master_seed, cell.experiment, cell.n, rep_index);
  Rng rng(seed);
  const GeneratedSample generated = generate_sample(cell.dgp, cell.n, rng);
  const Sample& sample = generated.sample;
  const std::uint64_t checksum = sample_checksum(sample);

  std::vector<ReplicationRow> rows;
  rows.reserve(config.roster.size());
  for (const auto& estimator : config.roster) {
    ReplicationRow row;
    row.experiment = cell.experiment;
    row.n = cell.n;
    row.rep_index = rep_index;
    row.estimator = estimator.name;
    row.sample_checksum = checksum;
    const auto start = std::chrono::steady_clock::now();
    try {
      const EstimateResult result =
          run_estimator(estimator, sample, config.context,
                        hash_combine(seed, hash_string(estimator.name)));
      if (std::isfinite(result.ate_hat())) {
        row.estimate = result.ate_hat();
        if (result.ci()) {
          row.ci_lower = result.ci()->lower;
          row.ci_upper = result.ci()->upper;
        }
        row.flags = join_flags(result.flags());
      } else {
        row.flags = "error:NonFinite";
      }
    } catch (const Error& e) {
      row.flags = "error:" + std::string(to_string(e.kind()));
    }
    row.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

McReportEntry aggregate(std::span<const ReplicationRow> rows, const TrueEstimands& truth) {
  if (rows.empty()) throw Error(ErrorKind::EmptyCell, "no replication rows to aggregate");
  McReportEntry entry;
  entry.experiment = rows.front().experiment;
  entry.n = rows.front().n;
  entry.estimator = rows.front().estimator;
  entry.category = estimator_category(entry.estimator);

  std::vector<double> estimates;
  std::size_t with_ci = 0;
  std::size_t covered = 0;
  double width_sum = 0.0;
  for (const auto& row : rows) {
    if (row.experiment != entry.experiment || row.n != entry.n ||
        row.estimator != entry.estimator) {
      throw Error(ErrorKind::DomainViolation, "aggregate() given rows from several cells");
    }
    if (!row.estimate) continue;
    estimates.push_back(*row.estimate);
    if (row.ci_lower && row.ci_upper) {
      ++with_ci;
      if (*row.ci_lower <= truth.ate && truth.ate <= *row.ci_upper) ++covered;
      width_sum += *row.ci_upper - *row.ci_lower;
    }
  }
  entry.reps_used = estimates.size();
  if (estimates.empty()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    entry.bias = entry.sd = entry.rmse = nan;
    return entry;
  }
  const double r = static_cast<double>(estimates.size());
  double mean = 0.0;
  double mse = 0.0;
  for (const double e : estimates) {
    mean += e;
    mse += (e - truth.ate) * (e - truth.ate);
  }
  mean /= r;
  double ss = 0.0;
  for (const double e : estimates) ss += (e - mean) * (e - mean);
  entry.bias = mean - truth.ate;
  entry.rmse = std::sqrt(mse / r);
  entry.sd = estimates.size() > 1 ? std::sqrt(ss / (r - 1.0)) : 0.0;
  if (with_ci > 0) {
    entry.coverage = static_cast<double>(covered) / static_cast<double>(with_ci);
    entry.mean_ci_width = width_sum / static_cast<double>(with_ci);
  }
  return entry;
}

GridResult run_grid(const McConfig& config, const ProgressSink& progress) {
  validate(config);

  std::vector<McCell> cells;
  for (const int e : config.experiments) {
    for (const std::size_t n : config.n_grid) {
      cells.push_back(McCell{e, DgpSpec::experiment(e), n});
    }
  }
  const std::size_t tasks = cells.size() * config.reps;
  std::vector<std::vector<ReplicationRow>> results(tasks);
  std::vector<std::atomic<std::size_t>> remaining(cells.size());
  for (auto& r : remaining) r.store(config.reps);

  std::atomic<std::size_t> next{0};
  std::mutex sink_mutex;
  std::size_t cells_done = 0;
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= tasks) return;
      const std::size_t c = task / config.reps;
      const std::size_t rep = task % config.reps;
      try {
        results[task] = run_replication(config, cells[c], rep);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(tasks);
        return;
      }
      if (remaining[c].fetch_sub(1) == 1) {
        std::lock_guard lock(sink_mutex);
        ++cells_done;
        if (progress) {
          progress(ProgressEvent{cells[c].experiment, cells[c].n, cells_done, cells.size()});
        }
      }
    }
  };

  const std::size_t threads = std::min(config.workers, std::max<std::size_t>(tasks, 1));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  GridResult out;
  out.rows.reserve(tasks * config.roster.size());
  for (auto& r : results) {
    for (auto& row : r) out.rows.push_back(std::move(row));
  }

  auto roster_pos = [&config](const std::string& name) {
    return static_cast<std::size_t>(
        std::find_if(config.roster.begin(), config.roster.end(),
                     [&](const EstimatorConfig& e) { return e.name == name; }) -
        config.roster.begin());
  };
  auto experiment_pos = [&config](int e) {
    return static_cast<std::size_t>(
        std::find(config.experiments.begin(), config.experiments.end(), e) -
        config.experiments.begin());
  };
  std::stable_sort(out.rows.begin(), out.rows.end(),
                   [&](const ReplicationRow& a, const ReplicationRow& b) {
                     const auto ka = std::make_tuple(experiment_pos(a.experiment), a.n,
                                                     roster_pos(a.estimator), a.rep_index);
                     const auto kb = std::make_tuple(experiment_pos(b.experiment), b.n,
                                                     roster_pos(b.estimator), b.rep_index);
                     return ka < kb;
                   });

  for (std::size_t begin = 0; begin < out.rows.size();) {
    std::size_t end = begin + 1;
    while (end < out.rows.size() && out.rows[end].experiment == out.rows[begin].experiment &&
           out.rows[end].n == out.rows[begin].n &&
           out.rows[end].estimator == out.rows[begin].estimator) {
      ++end;
    }
    const auto& first = out.rows[begin];
    const TrueEstimands truth =
        true_estimands(DgpSpec::experiment(first.experiment), first.n);
    out.report.push_back(aggregate(
        std::span<const ReplicationRow>(out.rows.data() + begin, end - begin), truth));
    begin = end;
  }
  return out;
}

}  // namespace rctsim
