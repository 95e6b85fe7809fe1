#include "rctsim/crossfit.hpp"

#include <algorithm>

#include "rctsim/error.hpp"
#include "rctsim/random.hpp"

namespace rctsim {

CrossFitPlan CrossFitPlan::two_fold_halves(std::size_t n) {
  const std::size_t k = (n + 1) / 2;
  std::vector<std::size_t> folds(n, 0);
  for (std::size_t i = k; i < n; ++i) folds[i] = 1;
  return CrossFitPlan(CrossFitScheme::TwoFoldHalves, std::move(folds), 2);
}

CrossFitPlan CrossFitPlan::k_fold(std::size_t n, std::size_t k) {
  if (k == 0 || k > n) {
    throw Error(ErrorKind::DomainViolation,
                "k_fold needs 1 <= k <= n (k=" + std::to_string(k) +
                    ", n=" + std::to_string(n) + ")");
  }
  std::vector<std::size_t> folds;
  folds.reserve(n);
  const std::size_t base = n / k;
  const std::size_t extra = n % k;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = base + (f < extra ? 1 : 0);
    folds.insert(folds.end(), size, f);
  }
  return CrossFitPlan(CrossFitScheme::KFold, std::move(folds), k);
}

CrossFitPlan CrossFitPlan::leave_one_out(std::size_t n) {
  std::vector<std::size_t> folds(n);
  for (std::size_t i = 0; i < n; ++i) folds[i] = i;
  return CrossFitPlan(CrossFitScheme::LeaveOneOut, std::move(folds), n);
}

CrossFitPlan CrossFitPlan::full_sample(std::size_t n) {
  return CrossFitPlan(CrossFitScheme::FullSample, std::vector<std::size_t>(n, 0), 1);
}

namespace {

struct Subset {
  std::vector<double> ws, ys, weights;
  void add(const ArmTrainingSet& d, std::size_t j) {
    ws.push_back(d.ws[j]);
    ys.push_back(d.ys[j]);
    if (!d.weights.empty()) weights.push_back(d.weights[j]);
  }
  bool empty() const noexcept { return ws.empty(); }
};

OutcomeModel fit(const Subset& s, ModelFamily family, const NuisanceSettings& settings,
                 std::uint64_t seed) {
  return fit_outcome_model(family, s.ws, s.ys, s.weights, settings, seed);
}

void add_flag(OutOfFoldPredictions& out, const char* flag) {
  if (std::find(out.flags.begin(), out.flags.end(), flag) == out.flags.end()) {
    out.flags.emplace_back(flag);
  }
}

void predict_leave_one_out(const ArmTrainingSet& data, ModelFamily family,
                           const NuisanceSettings& settings, std::uint64_t seed,
                           OutOfFoldPredictions& out) {
  const std::size_t n = data.ws.size();
  Subset arm;
  std::vector<std::size_t> arm_rows;
  for (std::size_t j = 0; j < n; ++j) {
    if (data.in_arm[j]) {
      arm.add(data, j);
      arm_rows.push_back(j);
    }
  }
  if (arm.empty()) {
    add_flag(out, "empty_arm");
    return;
  }
  const OutcomeModel full = fit(arm, family, settings, seed);
  for (std::size_t i = 0; i < n; ++i) {
    if (!data.in_arm[i]) out.values[i] = full.predict(data.ws[i]);
  }

  const auto* forest = std::get_if<ForestFit>(&full.model());
  for (std::size_t r = 0; r < arm_rows.size(); ++r) {
    const std::size_t i = arm_rows[r];
    if (forest != nullptr) {
      if (auto oob = forest->predict_out_of_bag(r, data.ws[i])) {
        out.values[i] = *oob;
        continue;
      }
    }
    // Exact refit without row i.
    Subset rest;
    for (std::size_t s = 0; s < arm_rows.size(); ++s) {
      if (s != r) rest.add(data, arm_rows[s]);
    }
    if (rest.empty()) {
      out.values[i] = 0.0;
      add_flag(out, "empty_arm");
      continue;
    }
    const OutcomeModel model = fit(rest, family, settings, hash_combine(seed, i + 1));
    out.values[i] = model.predict(data.ws[i]);
    if (!model.converged()) add_flag(out, "nonconverged");
  }
  if (!full.converged()) add_flag(out, "nonconverged");
}

}  // namespace

OutOfFoldPredictions out_of_fold_predictions(const CrossFitPlan& plan,
                                             const ArmTrainingSet& data,
                                             ModelFamily family,
                                             const NuisanceSettings& settings,
                                             std::uint64_t seed) {
  const std::size_t n = plan.n();
  if (data.ws.size() != n || data.ys.size() != n || data.in_arm.size() != n ||
      (!data.weights.empty() && data.weights.size() != n)) {
    throw Error(ErrorKind::FoldMismatch, "training data does not match the plan size");
  }
  OutOfFoldPredictions out;
  out.values.assign(n, 0.0);

  switch (plan.scheme()) {
    case CrossFitScheme::LeaveOneOut:
      predict_leave_one_out(data, family, settings, seed, out);
      return out;
    case CrossFitScheme::FullSample: {
      Subset arm;
      for (std::size_t j = 0; j < n; ++j) {
        if (data.in_arm[j]) arm.add(data, j);
      }
      if (arm.empty()) {
        add_flag(out, "empty_arm");
        return out;
      }
      const OutcomeModel model = fit(arm, family, settings, seed);
      for (std::size_t i = 0; i < n; ++i) out.values[i] = model.predict(data.ws[i]);
      if (!model.converged()) add_flag(out, "nonconverged");
      return out;
    }
    case CrossFitScheme::TwoFoldHalves:
    case CrossFitScheme::KFold:
      break;
  }

  for (std::size_t f = 0; f < plan.fold_count(); ++f) {
    Subset train;
    for (std::size_t j = 0; j < n; ++j) {
      if (data.in_arm[j] && plan.fold_of(j) != f) train.add(data, j);
    }
    if (train.empty()) {
      add_flag(out, "empty_arm");
      continue;  // g = 0 for this fold
    }
    const OutcomeModel model = fit(train, family, settings, hash_combine(seed, f));
    for (std::size_t i = 0; i < n; ++i) {
      if (plan.fold_of(i) == f) out.values[i] = model.predict(data.ws[i]);
    }
    if (!model.converged()) add_flag(out, "nonconverged");
  }
  return out;
}

}  // namespace rctsim
