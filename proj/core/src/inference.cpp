#include "rctsim/inference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "rctsim/error.hpp"

namespace rctsim {

namespace {

void check_hoeffding_args(std::size_t n, double delta, double alpha) {
  if (n == 0) throw Error(ErrorKind::DomainViolation, "n must be >= 1");
  if (!(delta > 0.0 && delta < 0.5)) {
    throw Error(ErrorKind::DomainViolation, "delta must lie in (0, 0.5)");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::DomainViolation, "alpha must lie in (0, 1)");
  }
}

}  // namespace

double hoeffding_halfwidth_mu1(std::size_t n, double delta, double alpha) {
  check_hoeffding_args(n, delta, alpha);
  return std::sqrt(std::log(2.0 / alpha) /
                   (2.0 * static_cast<double>(n) * delta * delta));
}

double hoeffding_halfwidth_ate(std::size_t n, double delta, double alpha) {
  check_hoeffding_args(n, delta, alpha);
  return (2.0 / delta) * std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

ConfidenceInterval hoeffding_ci_mu1(double mu1_hat, std::size_t n, double delta,
                                    double alpha, bool truncate) {
  const double h = hoeffding_halfwidth_mu1(n, delta, alpha);
  ConfidenceInterval ci{mu1_hat - h, mu1_hat + h, alpha};
  if (truncate) {
    ci.lower = std::clamp(ci.lower, 0.0, 1.0);
    ci.upper = std::clamp(ci.upper, 0.0, 1.0);
  }
  return ci;
}

ConfidenceInterval hoeffding_ci_ate(double ate_hat, std::size_t n, double delta,
                                    double alpha, bool truncate) {
  const double h = hoeffding_halfwidth_ate(n, delta, alpha);
  ConfidenceInterval ci{ate_hat - h, ate_hat + h, alpha};
  if (truncate) {
    ci.lower = std::clamp(ci.lower, -1.0, 1.0);
    ci.upper = std::clamp(ci.upper, -1.0, 1.0);
  }
  return ci;
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(ErrorKind::DomainViolation, "quantile level must lie in (0, 1)");
  }
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00, 2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  // Halley refinement against the exact CDF.
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

double ht_score_variance(const Sample& sample) {
  if (!sample.true_propensity) {
    throw Error(ErrorKind::MissingPropensity, "normal interval needs true propensities");
  }
  const std::size_t n = sample.size();
  if (n < 2) throw Error(ErrorKind::DomainViolation, "normal interval needs n >= 2");
  const auto& pis = *sample.true_propensity;
  std::vector<double> scores(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& o = sample.observations[i];
    scores[i] = o.y * o.x / pis[i] - o.y * (1 - o.x) / (1.0 - pis[i]);
    mean += scores[i];
  }
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (const double s : scores) ss += (s - mean) * (s - mean);
  return ss / static_cast<double>(n - 1);
}

ConfidenceInterval normal_ci_ate(const Sample& sample, double ate_hat, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::DomainViolation, "alpha must lie in (0, 1)");
  }
  const double variance = ht_score_variance(sample);
  const double z = normal_quantile(1.0 - 0.5 * alpha);
  const double h = z * std::sqrt(variance / static_cast<double>(sample.size()));
  return ConfidenceInterval{ate_hat - h, ate_hat + h, alpha};
}

}  // namespace rctsim
