#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "rctsim/nuisance/outcome_model.hpp"
#include "rctsim/types.hpp"

namespace rctsim {

/// The eleven simulation estimators, by canonical name:
///
///   true propensity       ht, adj_ht_crossfit, adj_ht_loo, adj_ht_full, ps_match
///   estimated propensity  dr_logistic, dr_forest, dr_forest_cf3
///   no propensity         nn_match, logistic_plugin, forest_tlearner
std::span<const std::string_view> canonical_estimator_names() noexcept;

bool is_canonical_estimator(std::string_view name) noexcept;

/// Throws UnknownEstimator for names outside the canonical roster.
PropensityUse estimator_category(std::string_view name);

/// Per-estimator settings. `family` and `cao_weighted` only apply to the
/// adj_ht_* estimators; the others have fixed nuisance families.
struct EstimatorConfig {
  std::string name;
  ModelFamily family = ModelFamily::Forest;
  bool cao_weighted = false;
};

/// Throws UnknownEstimator.
EstimatorConfig default_estimator_config(std::string_view name);

struct EstimatorContext {
  NuisanceSettings nuisance;
  double alpha = 0.05;
  double ps_clip = 0.01;
  /// Replaces sample.delta in the Hoeffding interval (sensitivity analysis).
  std::optional<double> delta_override;
};

/// Runs one roster entry. `ht` carries the Hoeffding ATE interval; other
/// estimators carry the normal interval when true propensities are present.
EstimateResult run_estimator(const EstimatorConfig& config, const Sample& sample,
                             const EstimatorContext& context, std::uint64_t seed);

}  // namespace rctsim
