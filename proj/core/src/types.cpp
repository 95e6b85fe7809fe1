#include "rctsim/types.hpp"

#include <cmath>

#include "rctsim/error.hpp"

namespace rctsim {

namespace {
// Absolute slack on the positivity check; delta values derived from closed
// forms can differ from the extreme probability by a rounding step.
constexpr double kPositivitySlack = 1e-12;
}  // namespace

std::string_view to_string(PropensityUse use) noexcept {
  switch (use) {
    case PropensityUse::TruePropensity: return "true_propensity";
    case PropensityUse::EstimatedPropensity: return "estimated_propensity";
    case PropensityUse::NoPropensity: return "no_propensity";
  }
  return "unknown";
}

std::optional<PropensityUse> parse_propensity_use(std::string_view text) noexcept {
  if (text == "true_propensity") return PropensityUse::TruePropensity;
  if (text == "estimated_propensity") return PropensityUse::EstimatedPropensity;
  if (text == "no_propensity") return PropensityUse::NoPropensity;
  return std::nullopt;
}

EstimateResult::EstimateResult(double mu1_hat, double mu0_hat,
                               PropensityUse category)
    : mu1_hat_(mu1_hat),
      mu0_hat_(mu0_hat),
      ate_hat_(mu1_hat - mu0_hat),
      category_(category) {}

EstimateResult EstimateResult::with_ci(const ConfidenceInterval& ci) const {
  if (!(ci.lower <= ci.upper)) {
    throw Error(ErrorKind::DomainViolation,
                "confidence interval lower bound exceeds upper bound");
  }
  EstimateResult out = *this;
  out.ci_ = ci;
  return out;
}

EstimateResult EstimateResult::with_flag(std::string flag) const {
  EstimateResult out = *this;
  out.flags_.push_back(std::move(flag));
  return out;
}

void validate_sample(const Sample& sample) {
  const auto& obs = sample.observations;
  if (obs.empty()) {
    throw Error(ErrorKind::LengthMismatch, "sample has no observations");
  }
  if (sample.true_propensity && sample.true_propensity->size() != obs.size()) {
    throw Error(ErrorKind::LengthMismatch,
                "true_propensity has " +
                    std::to_string(sample.true_propensity->size()) +
                    " entries for " + std::to_string(obs.size()) +
                    " observations");
  }
  for (std::size_t i = 0; i < obs.size(); ++i) {
    const Observation& o = obs[i];
    if (!(o.w >= 0.0 && o.w <= 1.0)) {
      throw Error(ErrorKind::DomainViolation, "covariate w outside [0,1]", i);
    }
    if (o.x != 0 && o.x != 1) {
      throw Error(ErrorKind::DomainViolation, "treatment x is not 0/1", i);
    }
    if (o.y != 0 && o.y != 1) {
      throw Error(ErrorKind::DomainViolation, "outcome y is not 0/1", i);
    }
  }
  if (!sample.true_propensity) return;

  const double delta = sample.delta;
  if (!(delta > 0.0 && delta < 0.5)) {
    throw Error(ErrorKind::DomainViolation, "delta must lie in (0, 0.5)");
  }
  const auto& pis = *sample.true_propensity;
  for (std::size_t i = 0; i < pis.size(); ++i) {
    const double pi = pis[i];
    if (!(pi >= delta - kPositivitySlack &&
          pi <= 1.0 - delta + kPositivitySlack)) {
      throw Error(ErrorKind::PositivityViolation,
                  "propensity " + std::to_string(pi) + " outside [delta, 1-delta]",
                  i);
    }
  }
}

}  // namespace rctsim
