#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rctsim/nuisance/outcome_model.hpp"

namespace rctsim {

enum class CrossFitScheme { TwoFoldHalves, KFold, LeaveOneOut, FullSample };

/// Assignment of units to folds, in the units' given order. The nuisance
/// model used for unit i is trained only on units in other folds, except
/// under FullSample where every model sees every unit.
class CrossFitPlan {
 public:
  /// Units 0..K-1 (K = ceil(n/2)) form fold 0, the rest fold 1.
  static CrossFitPlan two_fold_halves(std::size_t n);
  /// Contiguous blocks whose sizes differ by at most one. Requires 1 <= k <= n.
  static CrossFitPlan k_fold(std::size_t n, std::size_t k);
  static CrossFitPlan leave_one_out(std::size_t n);
  static CrossFitPlan full_sample(std::size_t n);

  CrossFitScheme scheme() const noexcept { return scheme_; }
  std::size_t n() const noexcept { return folds_.size(); }
  std::size_t fold_count() const noexcept { return fold_count_; }
  std::size_t fold_of(std::size_t unit) const { return folds_.at(unit); }
  const std::vector<std::size_t>& folds() const noexcept { return folds_; }

  /// Whether unit j may be in the training set of the model applied to unit i.
  bool may_train_on(std::size_t i, std::size_t j) const {
    return scheme_ == CrossFitScheme::FullSample || folds_.at(i) != folds_.at(j);
  }

 private:
  CrossFitPlan(CrossFitScheme scheme, std::vector<std::size_t> folds,
               std::size_t fold_count)
      : scheme_(scheme), folds_(std::move(folds)), fold_count_(fold_count) {}

  CrossFitScheme scheme_;
  std::vector<std::size_t> folds_;
  std::size_t fold_count_;
};

struct ArmTrainingSet {
  std::span<const double> ws;
  std::span<const double> ys;
  std::span<const std::uint8_t> in_arm;  // row belongs to the fitted arm
  std::span<const double> weights;       // empty = unit weights
};

struct OutOfFoldPredictions {
  std::vector<double> values;
  std::vector<std::string> flags;
};

/// Predictions g_i for every unit from a model fitted on arm rows the plan
/// allows for unit i. LeaveOneOut uses out-of-bag averages for forests and
/// exact refits for logistic models. A fold whose training arm is empty
/// contributes g_i = 0 and an "empty_arm" flag.
OutOfFoldPredictions out_of_fold_predictions(const CrossFitPlan& plan,
                                             const ArmTrainingSet& data,
                                             ModelFamily family,
                                             const NuisanceSettings& settings,
                                             std::uint64_t seed);

}  // namespace rctsim
