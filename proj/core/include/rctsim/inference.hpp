#pragma once

#include <cstddef>

#include "rctsim/types.hpp"

namespace rctsim {

enum class IntervalMethod { Hoeffding, Normal };

struct IntervalSpec {
  double alpha = 0.05;
  IntervalMethod method = IntervalMethod::Hoeffding;
};

/// sqrt(log(2/alpha) / (2 n delta^2)). Each Horvitz-Thompson term y x / pi
/// lies in [0, 1/delta], so Hoeffding's inequality makes mu1_hat +- this
/// width a finite-sample 1 - alpha interval for E[Y(1)].
/// Throws DomainViolation unless n >= 1, 0 < delta < 0.5, 0 < alpha < 1.
double hoeffding_halfwidth_mu1(std::size_t n, double delta, double alpha);

/// ATE scores y x / pi - y (1 - x)/(1 - pi) span [-1/delta, 1/delta], twice
/// the treated-arm range, so the width doubles:
/// (2/delta) sqrt(log(2/alpha) / (2n)).
double hoeffding_halfwidth_ate(std::size_t n, double delta, double alpha);

/// With `truncate`, the interval is intersected with [0, 1].
ConfidenceInterval hoeffding_ci_mu1(double mu1_hat, std::size_t n, double delta,
                                    double alpha, bool truncate = false);

/// With `truncate`, the interval is intersected with [-1, 1].
ConfidenceInterval hoeffding_ci_ate(double ate_hat, std::size_t n, double delta,
                                    double alpha, bool truncate = false);

/// Standard normal quantile (Acklam's rational approximation refined by one
/// Halley step); absolute error well below 1e-9 on (0, 1).
double normal_quantile(double p);

/// Sample variance (n - 1 denominator) of the per-unit Horvitz-Thompson ATE
/// score. Throws MissingPropensity, or DomainViolation when n < 2.
double ht_score_variance(const Sample& sample);

/// ate_hat +- z_{1 - alpha/2} sqrt(S^2 / n) with S^2 = ht_score_variance.
ConfidenceInterval normal_ci_ate(const Sample& sample, double ate_hat, double alpha);

}  // namespace rctsim
