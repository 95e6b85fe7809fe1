#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "rctsim/error.hpp"
#include "rctsim/nuisance/forest.hpp"

using namespace rctsim;

namespace {

// Recursive descent over the node table, independent of RegressionTree::predict.
double descend(const std::vector<TreeNode>& nodes, std::size_t k, double w) {
  const auto& node = nodes[k];
  if (node.left < 0) return node.value;
  return w < node.split ? descend(nodes, static_cast<std::size_t>(node.left), w)
                        : descend(nodes, static_cast<std::size_t>(node.right), w);
}

struct Data {
  std::vector<double> ws, ys;
};

Data noisy_step(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Data d;
  for (std::size_t i = 0; i < n; ++i) {
    const double w = unif(rng);
    d.ws.push_back(w);
    d.ys.push_back(unif(rng) < (w < 0.5 ? 0.2 : 0.7) ? 1.0 : 0.0);
  }
  return d;
}

}  // namespace

TEST(Forest, ConstantResponseIsExact) {
  const std::vector<double> ws{0.1, 0.4, 0.2, 0.9, 0.6, 0.33, 0.71};
  const std::vector<double> ys(ws.size(), 0.3);
  const auto fit = fit_forest(ws, ys, {}, ForestParams{}, 5, false);
  for (double w = 0.0; w <= 1.0; w += 0.05) EXPECT_EQ(fit.predict(w), 0.3);
}

TEST(Forest, RootLeafPredictsMean) {
  const std::vector<double> ws{0.1, 0.4, 0.2, 0.9}, ys{1, 0, 0, 1};
  const ForestParams params{.n_trees = 1, .min_node_size = 4, .bootstrap = false};
  const auto fit = fit_forest(ws, ys, {}, params, 1);
  EXPECT_EQ(fit.trees()[0].leaf_count(), 1u);
  for (const double w : {0.0, 0.5, 1.0}) EXPECT_DOUBLE_EQ(fit.predict(w), 0.5);
}

TEST(Forest, StepFunctionRecovered) {
  const std::size_t n = 2000;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> ws(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    ws[i] = unif(rng);
    ys[i] = ws[i] < 0.5 ? 0.0 : 1.0;
  }
  const auto fit = fit_forest(ws, ys, {}, ForestParams{}, 17);
  double mse = 0.0;
  const int grid = 1001;
  for (int k = 0; k < grid; ++k) {
    const double w = k / 1000.0;
    const double err = fit.predict(w) - (w < 0.5 ? 0.0 : 1.0);
    mse += err * err;
  }
  EXPECT_LT(mse / grid, 0.01);
}

TEST(Forest, TreePredictMatchesRecursiveDescent) {
  const auto d = noisy_step(300, 3);
  const auto fit = fit_forest(d.ws, d.ys, {}, ForestParams{.n_trees = 5}, 9);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const auto& tree : fit.trees()) {
    for (int k = 0; k < 100; ++k) {
      const double w = unif(rng);
      EXPECT_EQ(tree.predict(w), descend(tree.nodes(), 0, w));
    }
  }
}

TEST(Forest, LeavesRespectMinNodeSizeOnFullData) {
  const auto d = noisy_step(400, 5);
  const ForestParams params{.n_trees = 1, .min_node_size = 20, .bootstrap = false};
  const auto fit = fit_forest(d.ws, d.ys, {}, params, 2);
  // Every internal node had more than min_node_size rows.
  const auto& nodes = fit.trees()[0].nodes();
  std::vector<std::size_t> counts(nodes.size(), 0);
  for (const double w : d.ws) {
    std::size_t k = 0;
    ++counts[k];
    while (nodes[k].left >= 0) {
      k = static_cast<std::size_t>(w < nodes[k].split ? nodes[k].left : nodes[k].right);
      ++counts[k];
    }
  }
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (nodes[k].left >= 0) EXPECT_GT(counts[k], 20u);
    EXPECT_GT(counts[k], 0u);
  }
}

TEST(ForestProperty, InvariantToRowOrder) {
  const auto d = noisy_step(250, 21);
  std::vector<std::size_t> perm(d.ws.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> pw, py;
    for (const auto i : perm) {
      pw.push_back(d.ws[i]);
      py.push_back(d.ys[i]);
    }
    const auto a = fit_forest(d.ws, d.ys, {}, ForestParams{.n_trees = 20}, 77);
    const auto b = fit_forest(pw, py, {}, ForestParams{.n_trees = 20}, 77);
    for (double w = 0.0; w <= 1.0; w += 0.01) EXPECT_EQ(a.predict(w), b.predict(w));
    for (std::size_t r = 0; r < perm.size(); r += 17) {
      EXPECT_EQ(a.predict_out_of_bag(perm[r], 0.3), b.predict_out_of_bag(r, 0.3));
    }
  }
}

TEST(Forest, OutOfBagUsesOnlyExcludingTrees) {
  const auto d = noisy_step(60, 4);
  const auto fit = fit_forest(d.ws, d.ys, {}, ForestParams{.n_trees = 30}, 13);
  for (std::size_t row = 0; row < d.ws.size(); ++row) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t t = 0; t < fit.trees().size(); ++t) {
      if (fit.in_bag(t, row)) continue;
      sum += fit.trees()[t].predict(d.ws[row]);
      ++count;
    }
    const auto oob = fit.predict_out_of_bag(row, d.ws[row]);
    if (count == 0) {
      EXPECT_FALSE(oob.has_value());
    } else {
      ASSERT_TRUE(oob.has_value());
      EXPECT_NEAR(*oob, sum / count, 1e-15);
    }
  }
}

TEST(Forest, OutOfBagIgnoresOwnResponse) {
  auto d = noisy_step(80, 6);
  const auto a = fit_forest(d.ws, d.ys, {}, ForestParams{.n_trees = 40}, 3);
  const std::size_t row = 10;
  d.ys[row] = 1.0 - d.ys[row];
  const auto b = fit_forest(d.ws, d.ys, {}, ForestParams{.n_trees = 40}, 3);
  EXPECT_EQ(a.predict_out_of_bag(row, d.ws[row]), b.predict_out_of_bag(row, d.ws[row]));
}

TEST(Forest, SeedDeterminism) {
  const auto d = noisy_step(200, 2);
  const auto a = fit_forest(d.ws, d.ys, {}, ForestParams{}, 5);
  const auto b = fit_forest(d.ws, d.ys, {}, ForestParams{}, 5);
  const auto c = fit_forest(d.ws, d.ys, {}, ForestParams{}, 6);
  bool differs = false;
  for (double w = 0.0; w <= 1.0; w += 0.01) {
    EXPECT_EQ(a.predict(w), b.predict(w));
    differs = differs || a.predict(w) != c.predict(w);
  }
  EXPECT_TRUE(differs);
}

TEST(Forest, ProbabilityPredictionsInUnitInterval) {
  const auto d = noisy_step(300, 12);
  const auto fit = fit_forest(d.ws, d.ys, {}, ForestParams{}, 1);
  for (double w = 0.0; w <= 1.0; w += 0.001) {
    const double p = fit.predict(w);
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
  }
}

TEST(Forest, RejectsBadParams) {
  const std::vector<double> ws{0.1, 0.2}, ys{0, 1};
  EXPECT_THROW(fit_forest(ws, ys, {}, ForestParams{.n_trees = 0}, 1), Error);
  EXPECT_THROW(fit_forest(ws, ys, {}, ForestParams{.min_node_size = 0}, 1), Error);
  EXPECT_THROW(fit_forest({}, {}, {}, ForestParams{}, 1), Error);
}
