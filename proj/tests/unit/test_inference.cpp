#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "rctsim/dgp.hpp"
#include "rctsim/error.hpp"
#include "rctsim/inference.hpp"
#include "rctsim/random.hpp"

using namespace rctsim;

namespace oracle {
constexpr double kHalfwidthMu1 = 0.42946940834673756;  // sqrt(log(40) / 20)
constexpr double kHalfwidthAte = 0.85893881669347512;
constexpr double kZ975 = 1.959963984540054;
}  // namespace oracle

TEST(Hoeffding, ReferenceValues) {
  EXPECT_NEAR(hoeffding_halfwidth_mu1(1000, 0.1, 0.05), oracle::kHalfwidthMu1, 1e-15);
  EXPECT_NEAR(hoeffding_halfwidth_ate(1000, 0.1, 0.05), oracle::kHalfwidthAte, 1e-15);
  EXPECT_NEAR(hoeffding_halfwidth_ate(1000, 0.1, 0.05),
              2.0 * hoeffding_halfwidth_mu1(1000, 0.1, 0.05), 1e-15);
}

TEST(Hoeffding, QuadruplingHalves) {
  for (std::size_t n = 1; n <= 1 << 20; n *= 2) {
    EXPECT_EQ(hoeffding_halfwidth_mu1(4 * n, 0.2, 0.1), hoeffding_halfwidth_mu1(n, 0.2, 0.1) / 2)
        << n;
    EXPECT_EQ(hoeffding_halfwidth_ate(4 * n, 0.2, 0.1), hoeffding_halfwidth_ate(n, 0.2, 0.1) / 2)
        << n;
  }
}

TEST(Hoeffding, MonotoneOverGrid) {
  const std::size_t ns[] = {10, 100, 1000};
  const double deltas[] = {0.05, 0.1, 0.3};
  const double alphas[] = {0.01, 0.05, 0.2, 0.9};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = 0; k < 4; ++k) {
        const double h = hoeffding_halfwidth_mu1(ns[i], deltas[j], alphas[k]);
        if (i + 1 < 3) EXPECT_GT(h, hoeffding_halfwidth_mu1(ns[i + 1], deltas[j], alphas[k]));
        if (j + 1 < 3) EXPECT_GT(h, hoeffding_halfwidth_mu1(ns[i], deltas[j + 1], alphas[k]));
        if (k + 1 < 4) EXPECT_GT(h, hoeffding_halfwidth_mu1(ns[i], deltas[j], alphas[k + 1]));
      }
    }
  }
  // alpha -> 1: log(2/alpha) -> log 2
  EXPECT_NEAR(hoeffding_halfwidth_mu1(100, 0.1, 1.0 - 1e-12), std::sqrt(std::log(2.0) / 2.0),
              1e-9);
}

TEST(Hoeffding, RejectsBadArguments) {
  EXPECT_THROW(hoeffding_halfwidth_mu1(0, 0.1, 0.05), Error);
  EXPECT_THROW(hoeffding_halfwidth_mu1(10, 0.5, 0.05), Error);
  EXPECT_THROW(hoeffding_halfwidth_mu1(10, 0.0, 0.05), Error);
  EXPECT_THROW(hoeffding_halfwidth_mu1(10, 0.1, 1.0), Error);
  EXPECT_THROW(hoeffding_halfwidth_ate(10, 0.1, 0.0), Error);
}

TEST(Hoeffding, Intervals) {
  const auto ci = hoeffding_ci_mu1(0.5, 1000, 0.1, 0.05);
  EXPECT_NEAR(ci.lower, 0.5 - oracle::kHalfwidthMu1, 1e-15);
  EXPECT_NEAR(ci.upper, 0.5 + oracle::kHalfwidthMu1, 1e-15);
  const auto centered = hoeffding_ci_ate(0.0, 50, 0.1, 0.05);
  EXPECT_EQ(centered.lower, -centered.upper);
  const auto cut = hoeffding_ci_mu1(0.9, 50, 0.1, 0.05, true);
  EXPECT_EQ(cut.upper, 1.0);
  EXPECT_GE(cut.lower, 0.0);
  const auto cut_ate = hoeffding_ci_ate(0.0, 50, 0.1, 0.05, true);
  EXPECT_EQ(cut_ate.lower, -1.0);
  EXPECT_EQ(cut_ate.upper, 1.0);
}

TEST(NormalQuantile, KnownValues) {
  EXPECT_NEAR(normal_quantile(0.975), oracle::kZ975, 1e-12);
  EXPECT_NEAR(normal_quantile(0.5), 0.0, 1e-15);
  EXPECT_NEAR(normal_quantile(0.9), 1.2815515655446004, 1e-12);
  EXPECT_NEAR(normal_quantile(0.001), -3.090232306167813, 1e-11);
  EXPECT_NEAR(normal_quantile(1e-10), -6.361340902404056, 1e-9);
  EXPECT_THROW(normal_quantile(0.0), Error);
  EXPECT_THROW(normal_quantile(1.0), Error);
}

TEST(NormalInterval, ScoreVarianceHandFixture) {
  // scores: 2, -2, 0, 0
  EXPECT_NEAR(ht_score_variance(fixtures::four_units()), 8.0 / 3.0, 1e-12);
  EXPECT_THROW(ht_score_variance(fixtures::make_sample({0.1, 0.2}, {1, 0}, {1, 0})), Error);
}

TEST(NormalInterval, IdenticalScoresGiveZeroWidth) {
  const auto s = fixtures::make_sample({0.1, 0.5, 0.9}, {1, 0, 1}, {0, 0, 0},
                                       std::vector<double>{0.3, 0.4, 0.5});
  const auto ci = normal_ci_ate(s, 0.0, 0.05);
  EXPECT_EQ(ci.width(), 0.0);
}

TEST(NormalInterval, HoeffdingIsWiderOnExperiment3) {
  Rng rng(10);
  const auto g = generate_sample(DgpSpec::experiment3(), 1000, rng);
  const auto normal = normal_ci_ate(g.sample, 0.0, 0.05);
  EXPECT_GT(hoeffding_halfwidth_mu1(1000, 0.1, 0.05), normal.width() / 2);
  EXPECT_GT(hoeffding_halfwidth_ate(1000, 0.1, 0.05), normal.width() / 2);
}
