#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <variant>

#include "rctsim/nuisance/forest.hpp"
#include "rctsim/nuisance/logistic.hpp"

namespace rctsim {

/// `Zero` is the identically-zero regression (no adjustment).
enum class ModelFamily { Logistic, Forest, Zero };

std::string_view to_string(ModelFamily family) noexcept;
std::optional<ModelFamily> parse_model_family(std::string_view text) noexcept;

struct NuisanceSettings {
  ForestParams forest;
  LogisticOptions logistic;
};

struct ConstantModel {
  double value = 0.0;
};

/// A fitted regression g(w) with codomain [0,1].
class OutcomeModel {
 public:
  using Variant = std::variant<ConstantModel, LogisticFit, ForestFit>;

  explicit OutcomeModel(Variant model) : model_(std::move(model)) {}

  double predict(double w) const;
  /// False for a logistic fit that hit the iteration cap or separation.
  bool converged() const noexcept;
  const Variant& model() const noexcept { return model_; }

 private:
  Variant model_;
};

/// Fits `family` to (ws, ys). A logistic request on a single row degrades
/// to the constant model at the clipped response. Throws EmptyArm when there
/// are no rows, except for `Zero`, which needs none.
OutcomeModel fit_outcome_model(ModelFamily family, std::span<const double> ws,
                               std::span<const double> ys,
                               std::span<const double> weights,
                               const NuisanceSettings& settings,
                               std::uint64_t seed);

}  // namespace rctsim
