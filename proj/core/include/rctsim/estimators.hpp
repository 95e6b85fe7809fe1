#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "rctsim/crossfit.hpp"
#include "rctsim/nuisance/outcome_model.hpp"
#include "rctsim/types.hpp"

namespace rctsim {

// ---------------------------------------------------------------------------
// Known-propensity estimators. All of these require sample.true_propensity
// and throw MissingPropensity otherwise.
// ---------------------------------------------------------------------------

/// Horvitz-Thompson mean of the treated potential outcome,
/// n^-1 sum y_i x_i / pi_i. Unbiased whenever pi is the true assignment
/// probability.
double ht_mu1(const Sample& sample);

/// Mirror of ht_mu1 for the control arm: n^-1 sum y_i (1 - x_i) / (1 - pi_i).
double ht_mu0(const Sample& sample);

EstimateResult ht_ate(const Sample& sample);

/// Regression-adjusted inverse weighting,
///   n^-1 sum [ (y_i - g_i) x_i / pi_i + g_i ],
/// where g_i comes from a model that did not see unit i (per `plan`). Out of
/// fold g keeps the estimator finite-sample unbiased for any regression.
/// Throws FoldMismatch when g, plan and sample sizes disagree.
double adjusted_ht_mu1(const Sample& sample, std::span<const double> g,
                       const CrossFitPlan& plan);

/// Control-arm mirror: n^-1 sum [ (y_i - g_i)(1 - x_i) / (1 - pi_i) + g_i ].
double adjusted_ht_mu0(const Sample& sample, std::span<const double> g,
                       const CrossFitPlan& plan);

/// Both arms from precomputed per-unit predictions.
EstimateResult adjusted_ht_ate(const Sample& sample, std::span<const double> g1,
                               std::span<const double> g0, const CrossFitPlan& plan);

struct AdjustedHtOptions {
  ModelFamily family = ModelFamily::Forest;
  /// Fit the treated-arm regression with weights (1 - pi)/pi^2 and the
  /// control arm with pi/(1 - pi)^2.
  bool cao_weighted = false;
  NuisanceSettings nuisance;
  std::uint64_t seed = 0;
};

/// Fits g on treated responses (arm 1) and control responses (arm 0) under
/// `plan`, then applies adjusted_ht_mu1 / adjusted_ht_mu0.
EstimateResult adjusted_ht_ate(const Sample& sample, const CrossFitPlan& plan,
                               const AdjustedHtOptions& options);

// ---------------------------------------------------------------------------
// Estimated-propensity and propensity-free estimators.
// ---------------------------------------------------------------------------

struct AipwOptions {
  ModelFamily outcome_family = ModelFamily::Logistic;
  ModelFamily ps_family = ModelFamily::Logistic;
  std::size_t folds = 1;  // 1 = no cross-fitting, 3 = three contiguous folds
  double ps_clip = 0.01;  // estimated scores are clipped to [clip, 1 - clip]
  NuisanceSettings nuisance;
  std::uint64_t seed = 0;
};

/// Doubly robust (AIPW) estimate from given nuisance values.
EstimateResult aipw_from_nuisances(const Sample& sample,
                                   std::span<const double> pi_hat,
                                   std::span<const double> m1,
                                   std::span<const double> m0, double ps_clip);

/// Doubly robust estimate with fitted propensity and outcome models. A
/// training split without treated (or control) rows falls back to the
/// constant fit at the split's mean outcome and flags "empty_arm_fallback".
EstimateResult aipw_ate(const Sample& sample, const AipwOptions& options);

/// T-learner plug-in: separate outcome fits per arm, averaged over all units.
/// Throws EmptyArm when either arm is empty.
EstimateResult outcome_regression_ate(const Sample& sample, ModelFamily family,
                                      const NuisanceSettings& nuisance,
                                      std::uint64_t seed);

enum class MatchDistance { Covariate, TruePropensity };

/// One-to-one nearest-neighbour matching with replacement. Each unit's
/// missing potential outcome is taken from the closest opposite-arm unit
/// (ties to the smallest index). Throws EmptyArm, and MissingPropensity for
/// propensity distance without true scores.
EstimateResult matching_ate(const Sample& sample, MatchDistance distance);

}  // namespace rctsim
