#include "rctsim/estimators.hpp"

#include <algorithm>
#include <vector>

#include "rctsim/error.hpp"
#include "rctsim/nuisance/neighbors.hpp"
#include "rctsim/random.hpp"

namespace rctsim {

namespace {

const std::vector<double>& require_propensity(const Sample& sample) {
  if (!sample.true_propensity) {
    throw Error(ErrorKind::MissingPropensity, "estimator needs true propensities");
  }
  if (sample.true_propensity->size() != sample.size()) {
    throw Error(ErrorKind::LengthMismatch, "propensity length differs from sample");
  }
  return *sample.true_propensity;
}

void require_nonempty(const Sample& sample) {
  if (sample.observations.empty()) {
    throw Error(ErrorKind::LengthMismatch, "sample has no observations");
  }
}

void check_fold_shape(const Sample& sample, std::span<const double> g,
                      const CrossFitPlan& plan) {
  if (g.size() != sample.size() || plan.n() != sample.size()) {
    throw Error(ErrorKind::FoldMismatch,
                "adjustment has " + std::to_string(g.size()) + " values and plan " +
                    std::to_string(plan.n()) + " units for a sample of " +
                    std::to_string(sample.size()));
  }
}

struct ArmArrays {
  std::vector<double> ws, ys;
  std::vector<std::uint8_t> treated, control;
};

ArmArrays split_arms(const Sample& sample) {
  ArmArrays a;
  const std::size_t n = sample.size();
  a.ws.reserve(n);
  a.ys.reserve(n);
  a.treated.reserve(n);
  a.control.reserve(n);
  for (const auto& o : sample.observations) {
    a.ws.push_back(o.w);
    a.ys.push_back(static_cast<double>(o.y));
    a.treated.push_back(o.x == 1 ? 1 : 0);
    a.control.push_back(o.x == 1 ? 0 : 1);
  }
  return a;
}

EstimateResult with_flags(EstimateResult result, const std::vector<std::string>& flags) {
  for (const auto& f : flags) {
    if (std::find(result.flags().begin(), result.flags().end(), f) ==
        result.flags().end()) {
      result = result.with_flag(f);
    }
  }
  return result;
}

}  // namespace

double ht_mu1(const Sample& sample) {
  require_nonempty(sample);
  const auto& pis = require_propensity(sample);
  double sum = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto& o = sample.observations[i];
    if (o.x == 0) continue;  // term is exactly zero
    sum += (static_cast<double>(o.y) * static_cast<double>(o.x)) / pis[i];
  }
  return sum / static_cast<double>(sample.size());
}

double ht_mu0(const Sample& sample) {
  require_nonempty(sample);
  const auto& pis = require_propensity(sample);
  double sum = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto& o = sample.observations[i];
    if (o.x == 1) continue;
    sum += (static_cast<double>(o.y) * static_cast<double>(1 - o.x)) / (1.0 - pis[i]);
  }
  return sum / static_cast<double>(sample.size());
}

EstimateResult ht_ate(const Sample& sample) {
  return EstimateResult(ht_mu1(sample), ht_mu0(sample), PropensityUse::TruePropensity);
}

double adjusted_ht_mu1(const Sample& sample, std::span<const double> g,
                       const CrossFitPlan& plan) {
  require_nonempty(sample);
  const auto& pis = require_propensity(sample);
  check_fold_shape(sample, g, plan);
  double sum = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto& o = sample.observations[i];
    const double x = static_cast<double>(o.x);
    const double y = static_cast<double>(o.y);
    sum += o.x == 0 ? g[i] : ((y - g[i]) * x) / pis[i] + g[i];
  }
  return sum / static_cast<double>(sample.size());
}

double adjusted_ht_mu0(const Sample& sample, std::span<const double> g,
                       const CrossFitPlan& plan) {
  require_nonempty(sample);
  const auto& pis = require_propensity(sample);
  check_fold_shape(sample, g, plan);
  double sum = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto& o = sample.observations[i];
    const double c = static_cast<double>(1 - o.x);
    const double y = static_cast<double>(o.y);
    sum += o.x == 1 ? g[i] : ((y - g[i]) * c) / (1.0 - pis[i]) + g[i];
  }
  return sum / static_cast<double>(sample.size());
}

EstimateResult adjusted_ht_ate(const Sample& sample, std::span<const double> g1,
                               std::span<const double> g0, const CrossFitPlan& plan) {
  return EstimateResult(adjusted_ht_mu1(sample, g1, plan),
                        adjusted_ht_mu0(sample, g0, plan),
                        PropensityUse::TruePropensity);
}

EstimateResult adjusted_ht_ate(const Sample& sample, const CrossFitPlan& plan,
                               const AdjustedHtOptions& options) {
  require_nonempty(sample);
  const auto& pis = require_propensity(sample);
  if (plan.n() != sample.size()) {
    throw Error(ErrorKind::FoldMismatch, "plan size differs from sample size");
  }
  const ArmArrays arms = split_arms(sample);

  std::vector<double> w1, w0;
  if (options.cao_weighted) {
    w1.reserve(pis.size());
    w0.reserve(pis.size());
    for (const double pi : pis) {
      w1.push_back(cao_weight(pi));
      w0.push_back(cao_weight(1.0 - pi));
    }
  }

  const auto g1 = out_of_fold_predictions(
      plan, ArmTrainingSet{arms.ws, arms.ys, arms.treated, w1}, options.family,
      options.nuisance, hash_combine(options.seed, 1));
  const auto g0 = out_of_fold_predictions(
      plan, ArmTrainingSet{arms.ws, arms.ys, arms.control, w0}, options.family,
      options.nuisance, hash_combine(options.seed, 0));

  EstimateResult result = adjusted_ht_ate(sample, g1.values, g0.values, plan);
  result = with_flags(result, g1.flags);
  return with_flags(result, g0.flags);
}

EstimateResult aipw_from_nuisances(const Sample& sample,
                                   std::span<const double> pi_hat,
                                   std::span<const double> m1,
                                   std::span<const double> m0, double ps_clip) {
  require_nonempty(sample);
  const std::size_t n = sample.size();
  if (pi_hat.size() != n || m1.size() != n || m0.size() != n) {
    throw Error(ErrorKind::LengthMismatch, "nuisance lengths differ from sample");
  }
  if (!(ps_clip >= 0.0 && ps_clip < 0.5)) {
    throw Error(ErrorKind::DomainViolation, "ps_clip must lie in [0, 0.5)");
  }
  double sum1 = 0.0;
  double sum0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& o = sample.observations[i];
    const double x = static_cast<double>(o.x);
    const double c = static_cast<double>(1 - o.x);
    const double y = static_cast<double>(o.y);
    const double p = std::clamp(pi_hat[i], ps_clip, 1.0 - ps_clip);
    sum1 += (x * (y - m1[i])) / p + m1[i];
    sum0 += (c * (y - m0[i])) / (1.0 - p) + m0[i];
  }
  return EstimateResult(sum1 / static_cast<double>(n), sum0 / static_cast<double>(n),
                        PropensityUse::EstimatedPropensity);
}

EstimateResult aipw_ate(const Sample& sample, const AipwOptions& options) {
  require_nonempty(sample);
  const std::size_t n = sample.size();
  if (options.folds != 1 && options.folds != 3) {
    throw Error(ErrorKind::DomainViolation, "aipw folds must be 1 or 3");
  }
  const CrossFitPlan plan = options.folds == 1 ? CrossFitPlan::full_sample(n)
                                               : CrossFitPlan::k_fold(n, options.folds);
  const ArmArrays arms = split_arms(sample);
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = static_cast<double>(arms.treated[i]);

  std::vector<double> pi_hat(n), m1(n), m0(n);
  std::vector<std::string> flags;
  auto flag = [&flags](const char* f) {
    if (std::find(flags.begin(), flags.end(), f) == flags.end()) flags.emplace_back(f);
  };

  for (std::size_t f = 0; f < plan.fold_count(); ++f) {
    std::vector<double> tw, tx, ty, w1, y1, w0, y0;
    for (std::size_t j = 0; j < n; ++j) {
      if (plan.fold_count() > 1 && plan.fold_of(j) == f) continue;
      tw.push_back(arms.ws[j]);
      tx.push_back(xs[j]);
      ty.push_back(arms.ys[j]);
      if (arms.treated[j]) {
        w1.push_back(arms.ws[j]);
        y1.push_back(arms.ys[j]);
      } else {
        w0.push_back(arms.ws[j]);
        y0.push_back(arms.ys[j]);
      }
    }
    if (tw.empty()) {
      throw Error(ErrorKind::EmptyArm, "cross-fitting fold has no training rows");
    }
    double y_mean = 0.0;
    for (const double y : ty) y_mean += y;
    y_mean /= static_cast<double>(ty.size());
    const std::uint64_t fold_seed = hash_combine(options.seed, f);

    const OutcomeModel ps = fit_outcome_model(options.ps_family, tw, tx, {},
                                              options.nuisance, hash_combine(fold_seed, 2));
    auto fit_arm = [&](const std::vector<double>& w, const std::vector<double>& y,
                       std::uint64_t tag) {
      if (w.empty()) {
        flag("empty_arm_fallback");
        return OutcomeModel(ConstantModel{y_mean});
      }
      return fit_outcome_model(options.outcome_family, w, y, {}, options.nuisance,
                               hash_combine(fold_seed, tag));
    };
    const OutcomeModel model1 = fit_arm(w1, y1, 1);
    const OutcomeModel model0 = fit_arm(w0, y0, 0);
    if (!ps.converged() || !model1.converged() || !model0.converged()) {
      flag("nonconverged");
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (plan.fold_count() > 1 && plan.fold_of(i) != f) continue;
      pi_hat[i] = ps.predict(arms.ws[i]);
      m1[i] = model1.predict(arms.ws[i]);
      m0[i] = model0.predict(arms.ws[i]);
    }
  }
  return with_flags(aipw_from_nuisances(sample, pi_hat, m1, m0, options.ps_clip), flags);
}

EstimateResult outcome_regression_ate(const Sample& sample, ModelFamily family,
                                      const NuisanceSettings& nuisance,
                                      std::uint64_t seed) {
  require_nonempty(sample);
  std::vector<double> w1, y1, w0, y0;
  for (const auto& o : sample.observations) {
    auto& w = o.x == 1 ? w1 : w0;
    auto& y = o.x == 1 ? y1 : y0;
    w.push_back(o.w);
    y.push_back(static_cast<double>(o.y));
  }
  if (w1.empty() || w0.empty()) {
    throw Error(ErrorKind::EmptyArm, "plug-in estimator needs both arms");
  }
  const OutcomeModel model1 =
      fit_outcome_model(family, w1, y1, {}, nuisance, hash_combine(seed, 1));
  const OutcomeModel model0 =
      fit_outcome_model(family, w0, y0, {}, nuisance, hash_combine(seed, 0));
  double sum1 = 0.0;
  double sum0 = 0.0;
  for (const auto& o : sample.observations) {
    sum1 += model1.predict(o.w);
    sum0 += model0.predict(o.w);
  }
  const double n = static_cast<double>(sample.size());
  EstimateResult result(sum1 / n, sum0 / n, PropensityUse::NoPropensity);
  if (!model1.converged() || !model0.converged()) result = result.with_flag("nonconverged");
  return result;
}

EstimateResult matching_ate(const Sample& sample, MatchDistance distance) {
  require_nonempty(sample);
  const std::size_t n = sample.size();
  const std::vector<double>* pis = nullptr;
  if (distance == MatchDistance::TruePropensity) pis = &require_propensity(sample);
  auto key = [&](std::size_t i) {
    return pis != nullptr ? (*pis)[i] : sample.observations[i].w;
  };

  std::vector<std::size_t> treated, control;
  std::vector<double> treated_keys, control_keys;
  for (std::size_t i = 0; i < n; ++i) {
    if (sample.observations[i].x == 1) {
      treated.push_back(i);
      treated_keys.push_back(key(i));
    } else {
      control.push_back(i);
      control_keys.push_back(key(i));
    }
  }
  if (treated.empty() || control.empty()) {
    throw Error(ErrorKind::EmptyArm, "matching needs both arms");
  }
  const NearestNeighborIndex treated_index(treated_keys);
  const NearestNeighborIndex control_index(control_keys);

  double sum1 = 0.0;
  double sum0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& o = sample.observations[i];
    if (o.x == 1) {
      sum1 += o.y;
      sum0 += sample.observations[control[control_index.nearest(key(i))]].y;
    } else {
      sum0 += o.y;
      sum1 += sample.observations[treated[treated_index.nearest(key(i))]].y;
    }
  }
  const auto category = distance == MatchDistance::TruePropensity
                            ? PropensityUse::TruePropensity
                            : PropensityUse::NoPropensity;
  return EstimateResult(sum1 / static_cast<double>(n), sum0 / static_cast<double>(n),
                        category);
}

}  // namespace rctsim
