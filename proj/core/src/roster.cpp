#include "rctsim/roster.hpp"

#include <algorithm>
#include <array>

#include "rctsim/crossfit.hpp"
#include "rctsim/error.hpp"
#include "rctsim/estimators.hpp"
#include "rctsim/inference.hpp"

namespace rctsim {

namespace {

constexpr std::array<std::string_view, 11> kNames = {
    "ht",        "adj_ht_crossfit", "adj_ht_loo",      "adj_ht_full",
    "ps_match",  "nn_match",        "logistic_plugin", "forest_tlearner",
    "dr_logistic", "dr_forest",     "dr_forest_cf3",
};

[[noreturn]] void unknown(std::string_view name) {
  throw Error(ErrorKind::UnknownEstimator, "unknown estimator '" + std::string(name) + "'");
}

EstimateResult attach_interval(const EstimatorConfig& config, const Sample& sample,
                               const EstimatorContext& context, EstimateResult result) {
  if (config.name == "ht") {
    const double delta = context.delta_override.value_or(sample.delta);
    if (delta > 0.0 && delta < 0.5) {
      return result.with_ci(hoeffding_ci_ate(result.ate_hat(), sample.size(), delta,
                                             context.alpha));
    }
    return result.with_flag("ci_unavailable");
  }
  if (sample.has_propensity() && sample.size() >= 2) {
    return result.with_ci(normal_ci_ate(sample, result.ate_hat(), context.alpha));
  }
  return result;
}

}  // namespace

std::span<const std::string_view> canonical_estimator_names() noexcept {
  return kNames;
}

bool is_canonical_estimator(std::string_view name) noexcept {
  return std::find(kNames.begin(), kNames.end(), name) != kNames.end();
}

PropensityUse estimator_category(std::string_view name) {
  if (name == "ht" || name == "adj_ht_crossfit" || name == "adj_ht_loo" ||
      name == "adj_ht_full" || name == "ps_match") {
    return PropensityUse::TruePropensity;
  }
  if (name == "dr_logistic" || name == "dr_forest" || name == "dr_forest_cf3") {
    return PropensityUse::EstimatedPropensity;
  }
  if (name == "nn_match" || name == "logistic_plugin" || name == "forest_tlearner") {
    return PropensityUse::NoPropensity;
  }
  unknown(name);
}

EstimatorConfig default_estimator_config(std::string_view name) {
  if (!is_canonical_estimator(name)) unknown(name);
  EstimatorConfig config;
  config.name = std::string(name);
  return config;
}

EstimateResult run_estimator(const EstimatorConfig& config, const Sample& sample,
                             const EstimatorContext& context, std::uint64_t seed) {
  const std::string& name = config.name;
  const std::size_t n = sample.size();

  auto adjusted = [&](const CrossFitPlan& plan) {
    AdjustedHtOptions options;
    options.family = config.family;
    options.cao_weighted = config.cao_weighted;
    options.nuisance = context.nuisance;
    options.seed = seed;
    return adjusted_ht_ate(sample, plan, options);
  };
  auto doubly_robust = [&](ModelFamily family, std::size_t folds) {
    AipwOptions options;
    options.outcome_family = family;
    options.ps_family = family;
    options.folds = folds;
    options.ps_clip = context.ps_clip;
    options.nuisance = context.nuisance;
    options.seed = seed;
    return aipw_ate(sample, options);
  };

  std::optional<EstimateResult> result;
  if (name == "ht") {
    result = ht_ate(sample);
  } else if (name == "adj_ht_crossfit") {
    result = adjusted(CrossFitPlan::two_fold_halves(n));
  } else if (name == "adj_ht_loo") {
    result = adjusted(CrossFitPlan::leave_one_out(n));
  } else if (name == "adj_ht_full") {
    result = adjusted(CrossFitPlan::full_sample(n));
  } else if (name == "ps_match") {
    result = matching_ate(sample, MatchDistance::TruePropensity);
  } else if (name == "nn_match") {
    result = matching_ate(sample, MatchDistance::Covariate);
  } else if (name == "logistic_plugin") {
    result = outcome_regression_ate(sample, ModelFamily::Logistic, context.nuisance, seed);
  } else if (name == "forest_tlearner") {
    result = outcome_regression_ate(sample, ModelFamily::Forest, context.nuisance, seed);
  } else if (name == "dr_logistic") {
    result = doubly_robust(ModelFamily::Logistic, 1);
  } else if (name == "dr_forest") {
    result = doubly_robust(ModelFamily::Forest, 1);
  } else if (name == "dr_forest_cf3") {
    result = doubly_robust(ModelFamily::Forest, 3);
  } else {
    unknown(name);
  }
  return attach_interval(config, sample, context, std::move(*result));
}

}  // namespace rctsim
