#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rctsim {

/// One unit's covariate, treatment indicator and observed binary outcome.
/// Binary fields are stored as 0/1 integers so weighted sums need no casts.
struct Observation {
  double w = 0.0;
  int x = 0;
  int y = 0;
};

/// The dataset handed to estimators. `delta` is the positivity bound the
/// design guarantees: delta <= pi_i <= 1 - delta whenever propensities are
/// known.
struct Sample {
  std::vector<Observation> observations;
  std::optional<std::vector<double>> true_propensity;
  double delta = 0.0;

  std::size_t size() const noexcept { return observations.size(); }
  bool has_propensity() const noexcept { return true_propensity.has_value(); }
};

/// How an estimator uses the assignment mechanism. Drives report styling.
enum class PropensityUse { TruePropensity, EstimatedPropensity, NoPropensity };

std::string_view to_string(PropensityUse use) noexcept;
std::optional<PropensityUse> parse_propensity_use(std::string_view text) noexcept;

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double alpha = 0.05;

  bool contains(double value) const noexcept {
    return lower <= value && value <= upper;
  }
  double width() const noexcept { return upper - lower; }
};

/// Point estimates of E[Y(1)], E[Y(0)] and their difference. The ATE is
/// always derived from the two arm estimates, never stored independently.
class EstimateResult {
 public:
  EstimateResult(double mu1_hat, double mu0_hat, PropensityUse category);

  double mu1_hat() const noexcept { return mu1_hat_; }
  double mu0_hat() const noexcept { return mu0_hat_; }
  double ate_hat() const noexcept { return ate_hat_; }
  PropensityUse category() const noexcept { return category_; }
  const std::optional<ConfidenceInterval>& ci() const noexcept { return ci_; }
  const std::vector<std::string>& flags() const noexcept { return flags_; }

  /// Throws DomainViolation when lower > upper.
  EstimateResult with_ci(const ConfidenceInterval& ci) const;
  EstimateResult with_flag(std::string flag) const;

 private:
  double mu1_hat_;
  double mu0_hat_;
  double ate_hat_;
  PropensityUse category_;
  std::optional<ConfidenceInterval> ci_;
  std::vector<std::string> flags_;
};

struct TrueEstimands {
  double mu1 = 0.0;
  double mu0 = 0.0;
  double ate = 0.0;
};

/// Throws rctsim::Error naming the first violated invariant:
/// LengthMismatch, DomainViolation (w outside [0,1], non-binary x/y, bad
/// delta) or PositivityViolation (pi_i outside [delta, 1 - delta]).
void validate_sample(const Sample& sample);

}  // namespace rctsim
