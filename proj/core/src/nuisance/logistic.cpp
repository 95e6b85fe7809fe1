#include "rctsim/nuisance/logistic.hpp"

#include <algorithm>
#include <cmath>

#include "rctsim/dgp.hpp"
#include "rctsim/error.hpp"

namespace rctsim {

namespace {

constexpr std::size_t kMaxHalvings = 40;

// log(logistic(eta)) without cancellation.
double log_sigmoid(double eta) {
  if (eta >= 0.0) return -std::log1p(std::exp(-eta));
  return eta - std::log1p(std::exp(eta));
}

double weight_at(std::span<const double> weights, std::size_t i) {
  return weights.empty() ? 1.0 : weights[i];
}

double clipped_logit(double p, double clip) {
  p = std::clamp(p, clip, 1.0 - clip);
  return std::log(p / (1.0 - p));
}

}  // namespace

double logistic_log_likelihood(double intercept, double slope,
                               std::span<const double> ws,
                               std::span<const double> ys,
                               std::span<const double> weights) {
  double ll = 0.0;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    const double eta = intercept + slope * ws[i];
    ll += weight_at(weights, i) *
          (ys[i] * log_sigmoid(eta) + (1.0 - ys[i]) * log_sigmoid(-eta));
  }
  return ll;
}

LogisticFit fit_logistic(std::span<const double> ws, std::span<const double> ys,
                         std::span<const double> weights,
                         const LogisticOptions& options) {
  const std::size_t n = ws.size();
  if (ys.size() != n || (!weights.empty() && weights.size() != n)) {
    throw Error(ErrorKind::LengthMismatch, "fit_logistic input lengths differ");
  }
  if (n < 2) {
    throw Error(ErrorKind::DomainViolation,
                "fit_logistic needs at least two observations");
  }
  double total_weight = 0.0;
  double weighted_y = 0.0;
  double y_min = ys[0];
  double y_max = ys[0];
  for (std::size_t i = 0; i < n; ++i) {
    const double v = weight_at(weights, i);
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::DomainViolation, "weights must be positive", i);
    }
    total_weight += v;
    weighted_y += v * ys[i];
    y_min = std::min(y_min, ys[i]);
    y_max = std::max(y_max, ys[i]);
  }

  LogisticFit fit;
  fit.clip = options.clip;
  const double mean = weighted_y / total_weight;
  fit.intercept = clipped_logit(mean, options.clip);
  fit.slope = 0.0;
  fit.path.push_back({fit.intercept, fit.slope});

  if (y_min == y_max) {
    // Likelihood is unbounded; report the constant-probability fit.
    fit.converged = false;
    return fit;
  }

  double ll = logistic_log_likelihood(fit.intercept, fit.slope, ws, ys, weights);
  for (std::size_t iter = 0; iter < options.max_iterations; ++iter) {
    // Score and observed information. y - p is formed as y q - (1 - y) p
    // so it stays accurate when p rounds to 1.
    double g0 = 0.0, g1 = 0.0, h00 = 0.0, h01 = 0.0, h11 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = weight_at(weights, i);
      const double eta = fit.intercept + fit.slope * ws[i];
      const double p = logistic(eta);
      const double q = logistic(-eta);
      const double resid = ys[i] * q - (1.0 - ys[i]) * p;
      const double curv = v * p * q;
      g0 += v * resid;
      g1 += v * resid * ws[i];
      h00 += curv;
      h01 += curv * ws[i];
      h11 += curv * ws[i] * ws[i];
    }

    double step0 = 0.0;
    double step1 = 0.0;
    const double det = h00 * h11 - h01 * h01;
    if (det > 1e-12 * h00 * h11 && det > 0.0) {
      step0 = (h11 * g0 - h01 * g1) / det;
      step1 = (h00 * g1 - h01 * g0) / det;
    } else if (h00 > 0.0) {
      // Covariate carries no information (e.g. a single distinct w).
      step0 = g0 / h00;
    } else {
      break;
    }

    const double full_change = std::max(std::abs(step0), std::abs(step1));
    const double ll_slack = 1e-12 * (1.0 + std::abs(ll));
    double scale = 1.0;
    bool accepted = false;
    for (std::size_t h = 0; h <= kMaxHalvings; ++h) {
      const double a = fit.intercept + scale * step0;
      const double b = fit.slope + scale * step1;
      const double candidate = logistic_log_likelihood(a, b, ws, ys, weights);
      if (candidate >= ll - ll_slack) {
        fit.intercept = a;
        fit.slope = b;
        ll = candidate;
        accepted = true;
        break;
      }
      scale *= 0.5;
    }
    fit.iterations = iter + 1;
    if (!accepted) {
      // No ascent direction left at working precision.
      fit.converged = full_change < 1e-6;
      return fit;
    }
    fit.path.push_back({fit.intercept, fit.slope});
    if (full_change < options.tolerance) {
      fit.converged = true;
      return fit;
    }
  }
  fit.converged = false;
  return fit;
}

double predict_logistic(const LogisticFit& fit, double w) noexcept {
  const double p = logistic(fit.intercept + fit.slope * w);
  return std::clamp(p, fit.clip, 1.0 - fit.clip);
}

}  // namespace rctsim
