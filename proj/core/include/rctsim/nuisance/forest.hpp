#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rctsim {

struct ForestParams {
  std::size_t n_trees = 100;
  std::size_t min_node_size = 5;  // nodes with this many rows or fewer are leaves
  bool bootstrap = true;
  std::size_t max_depth = 30;
};

/// Throws DomainViolation when n_trees or min_node_size is zero.
void validate(const ForestParams& params);

struct TreeNode {
  double split = 0.0;      // rows with w < split go left
  double value = 0.0;      // weighted mean response of the node
  std::int32_t left = -1;  // -1 marks a leaf
  std::int32_t right = -1;

  bool is_leaf() const noexcept { return left < 0; }
};

/// CART regression tree over a single covariate; node 0 is the root.
class RegressionTree {
 public:
  explicit RegressionTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {}

  const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
  double predict(double w) const noexcept;
  std::size_t leaf_count() const noexcept;

 private:
  std::vector<TreeNode> nodes_;
};

class ForestFit {
 public:
  ForestFit(std::vector<RegressionTree> trees, ForestParams params,
            bool probability, std::size_t training_rows,
            std::vector<std::uint8_t> in_bag);

  const std::vector<RegressionTree>& trees() const noexcept { return trees_; }
  const ForestParams& params() const noexcept { return params_; }
  bool probability() const noexcept { return probability_; }
  std::size_t training_rows() const noexcept { return training_rows_; }

  /// Average of per-tree leaf means; clipped to [0,1] for probability fits.
  double predict(double w) const noexcept;

  /// Average over the trees whose bootstrap sample excluded training row
  /// `row` (indexed as passed to fit_forest). Such a prediction never saw
  /// that row's response. Empty when every tree drew the row.
  std::optional<double> predict_out_of_bag(std::size_t row, double w) const;

  bool in_bag(std::size_t tree, std::size_t row) const {
    return in_bag_[tree * training_rows_ + row] != 0;
  }

 private:
  double finish(double sum, double lo, double hi, std::size_t count) const noexcept;

  std::vector<RegressionTree> trees_;
  ForestParams params_;
  bool probability_;
  std::size_t training_rows_;
  std::vector<std::uint8_t> in_bag_;  // n_trees x training_rows
};

/// Grows params.n_trees regression trees on bootstrap resamples of (ws, ys).
/// Splits minimise weighted within-node squared error over midpoints of
/// consecutive distinct w values; leaves carry weighted means. Rows are
/// put in a canonical (w, y, weight) order before resampling, so the fit is
/// invariant to the order rows are passed in. Tree t draws from a stream
/// seeded by (seed, t). Empty `weights` means unit weights.
ForestFit fit_forest(std::span<const double> ws, std::span<const double> ys,
                     std::span<const double> weights, const ForestParams& params,
                     std::uint64_t seed, bool probability = true);

inline double predict_forest(const ForestFit& fit, double w) noexcept {
  return fit.predict(w);
}

}  // namespace rctsim
