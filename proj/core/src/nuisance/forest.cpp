#include "rctsim/nuisance/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "rctsim/error.hpp"
#include "rctsim/random.hpp"

namespace rctsim {

void validate(const ForestParams& params) {
  if (params.n_trees == 0) {
    throw Error(ErrorKind::DomainViolation, "forest needs at least one tree");
  }
  if (params.min_node_size == 0) {
    throw Error(ErrorKind::DomainViolation, "min_node_size must be >= 1");
  }
}

double RegressionTree::predict(double w) const noexcept {
  std::size_t k = 0;
  while (!nodes_[k].is_leaf()) {
    k = static_cast<std::size_t>(w < nodes_[k].split ? nodes_[k].left
                                                      : nodes_[k].right);
  }
  return nodes_[k].value;
}

std::size_t RegressionTree::leaf_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

ForestFit::ForestFit(std::vector<RegressionTree> trees, ForestParams params,
                     bool probability, std::size_t training_rows,
                     std::vector<std::uint8_t> in_bag)
    : trees_(std::move(trees)),
      params_(params),
      probability_(probability),
      training_rows_(training_rows),
      in_bag_(std::move(in_bag)) {}

double ForestFit::finish(double sum, double lo, double hi,
                         std::size_t count) const noexcept {
  // Identical votes return that value exactly rather than sum / count.
  double out = lo == hi ? lo : sum / static_cast<double>(count);
  if (probability_) out = std::clamp(out, 0.0, 1.0);
  return out;
}

double ForestFit::predict(double w) const noexcept {
  double sum = 0.0;
  double lo = INFINITY;
  double hi = -INFINITY;
  for (const auto& tree : trees_) {
    const double v = tree.predict(w);
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return finish(sum, lo, hi, trees_.size());
}

std::optional<double> ForestFit::predict_out_of_bag(std::size_t row, double w) const {
  if (row >= training_rows_) {
    throw Error(ErrorKind::DomainViolation, "out-of-bag row out of range", row);
  }
  double sum = 0.0;
  double lo = INFINITY;
  double hi = -INFINITY;
  std::size_t count = 0;
  for (std::size_t t = 0; t < trees_.size(); ++t) {
    if (in_bag(t, row)) continue;
    const double v = trees_[t].predict(w);
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    ++count;
  }
  if (count == 0) return std::nullopt;
  return finish(sum, lo, hi, count);
}

namespace {

class TreeBuilder {
 public:
  TreeBuilder(const ForestParams& params) : params_(params) {}

  RegressionTree build(std::span<const double> w, std::span<const double> y,
                       std::span<const double> v) {
    w_ = w;
    y_ = y;
    v_ = v;
    nodes_.clear();
    grow(0, w.size(), 0);
    return RegressionTree(std::move(nodes_));
  }

 private:
  // Rows [lo, hi) are sorted by w.
  std::int32_t grow(std::size_t lo, std::size_t hi, std::size_t depth) {
    double sw = 0.0, swy = 0.0;
    double y_min = y_[lo], y_max = y_[lo];
    for (std::size_t k = lo; k < hi; ++k) {
      sw += v_[k];
      swy += v_[k] * y_[k];
      y_min = std::min(y_min, y_[k]);
      y_max = std::max(y_max, y_[k]);
    }
    const auto id = static_cast<std::int32_t>(nodes_.size());
    TreeNode node;
    node.value = y_min == y_max ? y_min : std::clamp(swy / sw, y_min, y_max);
    nodes_.push_back(node);

    const std::size_t size = hi - lo;
    if (size <= params_.min_node_size || depth >= params_.max_depth ||
        y_min == y_max || w_[lo] == w_[hi - 1]) {
      return id;
    }

    const double parent_score = swy * swy / sw;
    double best_score = parent_score;
    std::size_t best_k = hi;
    double left_w = 0.0, left_wy = 0.0;
    for (std::size_t k = lo; k + 1 < hi; ++k) {
      left_w += v_[k];
      left_wy += v_[k] * y_[k];
      if (!(w_[k] < w_[k + 1])) continue;
      const double right_w = sw - left_w;
      const double right_wy = swy - left_wy;
      const double score =
          left_wy * left_wy / left_w + right_wy * right_wy / right_w;
      if (score > best_score) {
        best_score = score;
        best_k = k;
      }
    }
    // Reduction in weighted SSE equals best_score - parent_score.
    if (best_k == hi ||
        best_score - parent_score <= 1e-12 * std::max(1.0, parent_score)) {
      return id;
    }

    const double mid = 0.5 * (w_[best_k] + w_[best_k + 1]);
    const double split = mid > w_[best_k] ? mid : w_[best_k + 1];
    const std::int32_t left = grow(lo, best_k + 1, depth + 1);
    const std::int32_t right = grow(best_k + 1, hi, depth + 1);
    nodes_[static_cast<std::size_t>(id)].split = split;
    nodes_[static_cast<std::size_t>(id)].left = left;
    nodes_[static_cast<std::size_t>(id)].right = right;
    return id;
  }

  const ForestParams& params_;
  std::span<const double> w_, y_, v_;
  std::vector<TreeNode> nodes_;
};

}  // namespace

ForestFit fit_forest(std::span<const double> ws, std::span<const double> ys,
                     std::span<const double> weights, const ForestParams& params,
                     std::uint64_t seed, bool probability) {
  validate(params);
  const std::size_t n = ws.size();
  if (n == 0) {
    throw Error(ErrorKind::DomainViolation, "fit_forest needs at least one row");
  }
  if (ys.size() != n || (!weights.empty() && weights.size() != n)) {
    throw Error(ErrorKind::LengthMismatch, "fit_forest input lengths differ");
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw Error(ErrorKind::DomainViolation, "weights must be positive", i);
    }
  }
  auto weight_at = [&](std::size_t i) { return weights.empty() ? 1.0 : weights[i]; };

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::make_tuple(ws[a], ys[a], weight_at(a)) <
           std::make_tuple(ws[b], ys[b], weight_at(b));
  });

  std::vector<RegressionTree> trees;
  trees.reserve(params.n_trees);
  std::vector<std::uint8_t> in_bag(params.n_trees * n, 0);
  std::vector<std::size_t> draws(n);
  std::vector<double> tw(n), ty(n), tv(n);
  TreeBuilder builder(params);

  for (std::size_t t = 0; t < params.n_trees; ++t) {
    if (params.bootstrap) {
      Rng rng(hash_combine(seed, t));
      for (auto& d : draws) d = uniform_index(rng, n);
      // Canonical positions are w-sorted, so sorted draws are w-sorted too.
      std::sort(draws.begin(), draws.end());
    } else {
      std::iota(draws.begin(), draws.end(), std::size_t{0});
    }
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t row = order[draws[k]];
      tw[k] = ws[row];
      ty[k] = ys[row];
      tv[k] = weight_at(row);
      in_bag[t * n + row] = 1;
    }
    trees.push_back(builder.build(tw, ty, tv));
  }
  return ForestFit(std::move(trees), params, probability, n, std::move(in_bag));
}

}  // namespace rctsim
