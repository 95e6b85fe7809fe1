#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rctsim {

struct LogisticOptions {
  double tolerance = 1e-8;      // max |coefficient change| for convergence
  std::size_t max_iterations = 100;
  double clip = 1e-6;           // predictions live in [clip, 1 - clip]
};

struct LogisticCoefficients {
  double intercept = 0.0;
  double slope = 0.0;
};

/// One-covariate logistic regression fitted by IRLS.
struct LogisticFit {
  double intercept = 0.0;
  double slope = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
  double clip = 1e-6;
  /// Coefficients after every accepted step, starting with the initial point.
  std::vector<LogisticCoefficients> path;
};

/// Weighted Bernoulli log-likelihood, evaluated with log1p/exp in the stable
/// branch. `ys` may be fractional in [0,1].
double logistic_log_likelihood(double intercept, double slope,
                               std::span<const double> ws,
                               std::span<const double> ys,
                               std::span<const double> weights = {});

/// Maximises the (weighted) Bernoulli likelihood by Newton/IRLS with step
/// halving whenever a step would lower the likelihood.
///
/// Requires at least two observations and positive weights of matching
/// length (empty `weights` means unit weights); throws DomainViolation
/// otherwise. When every outcome is identical the MLE is at infinity; the
/// constant fit (clipped log-odds of the mean, slope 0) is returned with
/// converged = false. Under quasi-separation the last iterate is returned
/// with converged = false.
LogisticFit fit_logistic(std::span<const double> ws, std::span<const double> ys,
                         std::span<const double> weights = {},
                         const LogisticOptions& options = {});

/// logistic(intercept + slope w) clipped to [clip, 1 - clip].
double predict_logistic(const LogisticFit& fit, double w) noexcept;

}  // namespace rctsim
