#include "rctsim/nuisance/outcome_model.hpp"

#include <algorithm>

#include "rctsim/error.hpp"

namespace rctsim {

std::string_view to_string(ModelFamily family) noexcept {
  switch (family) {
    case ModelFamily::Logistic: return "logistic";
    case ModelFamily::Forest: return "forest";
    case ModelFamily::Zero: return "zero";
  }
  return "unknown";
}

std::optional<ModelFamily> parse_model_family(std::string_view text) noexcept {
  if (text == "logistic") return ModelFamily::Logistic;
  if (text == "forest") return ModelFamily::Forest;
  if (text == "zero") return ModelFamily::Zero;
  return std::nullopt;
}

double OutcomeModel::predict(double w) const {
  struct Visitor {
    double w;
    double operator()(const ConstantModel& m) const { return m.value; }
    double operator()(const LogisticFit& m) const { return predict_logistic(m, w); }
    double operator()(const ForestFit& m) const { return m.predict(w); }
  };
  return std::visit(Visitor{w}, model_);
}

bool OutcomeModel::converged() const noexcept {
  if (const auto* fit = std::get_if<LogisticFit>(&model_)) return fit->converged;
  return true;
}

OutcomeModel fit_outcome_model(ModelFamily family, std::span<const double> ws,
                               std::span<const double> ys,
                               std::span<const double> weights,
                               const NuisanceSettings& settings,
                               std::uint64_t seed) {
  if (family == ModelFamily::Zero) return OutcomeModel(ConstantModel{0.0});
  if (ws.empty()) {
    throw Error(ErrorKind::EmptyArm, "no training rows for outcome model");
  }
  if (family == ModelFamily::Forest) {
    return OutcomeModel(fit_forest(ws, ys, weights, settings.forest, seed, true));
  }
  if (ws.size() == 1) {
    const double clip = settings.logistic.clip;
    return OutcomeModel(ConstantModel{std::clamp(ys[0], clip, 1.0 - clip)});
  }
  return OutcomeModel(fit_logistic(ws, ys, weights, settings.logistic));
}

}  // namespace rctsim
