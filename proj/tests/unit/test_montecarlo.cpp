#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "rctsim/csv.hpp"
#include "rctsim/error.hpp"
#include "rctsim/montecarlo.hpp"
#include "rctsim/random.hpp"

using namespace rctsim;

namespace {

McConfig small_config(std::vector<std::string> names) {
  McConfig c;
  c.roster.clear();
  for (const auto& name : names) c.roster.push_back(default_estimator_config(name));
  c.experiments = {1};
  c.n_grid = {50};
  c.reps = 3;
  return c;
}

ReplicationRow row(double estimate, double lo, double hi) {
  ReplicationRow r;
  r.experiment = 1;
  r.n = 10;
  r.estimator = "ht";
  r.estimate = estimate;
  r.ci_lower = lo;
  r.ci_upper = hi;
  return r;
}

}  // namespace

TEST(DeriveSeed, StableAndCollisionFree) {
  EXPECT_EQ(derive_seed(1, 2, 100, 7), derive_seed(1, 2, 100, 7));
  std::vector<std::uint64_t> seeds;
  seeds.reserve(1000000);
  for (std::size_t rep = 0; rep < 1000000; ++rep) seeds.push_back(derive_seed(5, 1, 200, rep));
  std::sort(seeds.begin(), seeds.end());
  EXPECT_EQ(std::adjacent_find(seeds.begin(), seeds.end()), seeds.end());
}

TEST(DeriveSeed, AdjacentStreamsDisjoint) {
  std::unordered_set<std::uint64_t> draws;
  for (std::size_t rep = 0; rep < 100; ++rep) {
    Rng rng(derive_seed(20210701, 3, 500, rep));
    for (int k = 0; k < 1000; ++k) draws.insert(rng());
  }
  EXPECT_EQ(draws.size(), 100000u);
}

TEST(Replication, ZeroProbabilityLawGivesZero) {
  McConfig config = small_config({"ht"});
  const McCell cell{1, DgpSpec::custom("never", [](double, std::size_t) { return 0.0; }), 40};
  for (std::size_t rep = 0; rep < 5; ++rep) {
    const auto rows = run_replication(config, cell, rep);
    ASSERT_EQ(rows.size(), 1u);
    ASSERT_TRUE(rows[0].estimate.has_value());
    EXPECT_EQ(*rows[0].estimate, 0.0);
  }
}

TEST(Replication, Deterministic) {
  McConfig config = small_config({"ht", "adj_ht_crossfit", "dr_forest", "nn_match"});
  const McCell cell{2, DgpSpec::experiment2(), 80};
  const auto a = run_replication(config, cell, 4);
  const auto b = run_replication(config, cell, 4);
  ASSERT_EQ(a.size(), 4u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].estimator, b[i].estimator);
    EXPECT_EQ(a[i].estimate, b[i].estimate);
    EXPECT_EQ(a[i].ci_lower, b[i].ci_lower);
    EXPECT_EQ(a[i].flags, b[i].flags);
    EXPECT_EQ(a[i].sample_checksum, a[0].sample_checksum);
  }
}

TEST(Replication, ZeroStubAdjustmentEqualsHt) {
  McConfig config = small_config({"ht", "adj_ht_crossfit"});
  config.roster[1].family = ModelFamily::Zero;
  const McCell cell{3, DgpSpec::experiment3(), 64};
  for (std::size_t rep = 0; rep < 10; ++rep) {
    const auto rows = run_replication(config, cell, rep);
    EXPECT_EQ(rows[0].estimate, rows[1].estimate);
  }
}

TEST(Replication, FailuresBecomeFlaggedRows) {
  // n = 1 leaves one arm empty, so the T-learner cannot be fitted.
  McConfig config = small_config({"forest_tlearner"});
  const McCell cell{1, DgpSpec::experiment1(), 1};
  const auto rows = run_replication(config, cell, 0);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].estimate.has_value());
  EXPECT_NE(rows[0].flags.find("error:EmptyArm"), std::string::npos);
}

TEST(Aggregate, HandExamples) {
  const TrueEstimands truth{0.5, 0.5, 0.0};
  const std::vector<ReplicationRow> rows{row(0.1, -1, 1), row(-0.1, -1, 1)};
  const auto e = aggregate(rows, truth);
  EXPECT_EQ(e.reps_used, 2u);
  EXPECT_NEAR(e.bias, 0.0, 1e-17);
  EXPECT_NEAR(e.rmse, 0.1, 1e-15);
  EXPECT_NEAR(e.sd, std::sqrt(0.02), 1e-15);
  EXPECT_EQ(e.coverage, 1.0);
  EXPECT_EQ(e.mean_ci_width, 2.0);

  const std::vector<ReplicationRow> exact{row(0.0, 0, 0), row(0.0, 0, 0)};
  const auto z = aggregate(exact, truth);
  EXPECT_EQ(z.bias, 0.0);
  EXPECT_EQ(z.rmse, 0.0);
  EXPECT_EQ(z.sd, 0.0);
}

TEST(Aggregate, MissingEstimatesAndErrors) {
  const TrueEstimands truth{0.5, 0.5, 0.0};
  EXPECT_THROW(aggregate({}, truth), Error);
  ReplicationRow failed;
  failed.estimator = "ht";
  failed.experiment = 1;
  failed.n = 10;
  const std::vector<ReplicationRow> none{failed};
  const auto e = aggregate(none, truth);
  EXPECT_EQ(e.reps_used, 0u);
  EXPECT_TRUE(std::isnan(e.rmse));
  std::vector<ReplicationRow> mixed{row(0.1, -1, 1), row(0.1, -1, 1)};
  mixed[1].estimator = "nn_match";
  EXPECT_THROW(aggregate(mixed, truth), Error);
}

TEST(Grid, SingleCell) {
  McConfig config = small_config({"ht"});
  config.reps = 1;
  const auto result = run_grid(config);
  EXPECT_EQ(result.rows.size(), 1u);
  EXPECT_EQ(result.report.size(), 1u);
}

TEST(Grid, WorkerCountDoesNotChangeOutput) {
  McConfig config = small_config({"ht", "adj_ht_loo", "ps_match", "dr_logistic", "logistic_plugin"});
  config.experiments = {1, 3};
  config.n_grid = {20, 60};
  config.reps = 4;
  config.context.nuisance.forest.n_trees = 10;
  auto csv = [](const GridResult& r) {
    std::ostringstream a, b;
    write_replications_csv(a, r.rows);
    write_aggregate_csv(b, r.report);
    return a.str() + b.str();
  };
  const auto one = csv(run_grid(config));
  config.workers = 3;
  std::size_t events = 0;
  const auto three = csv(run_grid(config, [&](const ProgressEvent&) { ++events; }));
  EXPECT_EQ(one, three);
  EXPECT_EQ(events, 4u);
}

TEST(Grid, HtUnbiasedExperiment1) {
  McConfig config = small_config({"ht"});
  config.n_grid = {100};
  config.reps = 10000;
  const auto result = run_grid(config);
  const auto& e = result.report.at(0);
  EXPECT_LE(std::abs(e.bias), 4.0 * e.sd / std::sqrt(10000.0));
}

TEST(Config, Validation) {
  auto bad = small_config({"ht"});
  bad.reps = 0;
  try {
    validate(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConfigParse);
    EXPECT_NE(std::string(e.what()).find("reps"), std::string::npos);
  }
  bad = small_config({"ht", "ht"});
  EXPECT_THROW(validate(bad), Error);
  bad = small_config({"ht"});
  bad.n_grid = {100, 50};
  EXPECT_THROW(validate(bad), Error);
  EXPECT_NO_THROW(validate(default_mc_config()));
  EXPECT_EQ(default_mc_config().roster.size(), 11u);
}
