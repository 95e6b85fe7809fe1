#include "rctsim/dgp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "rctsim/error.hpp"

namespace rctsim {

namespace {

void require_unit_interval(double w) {
  if (!(w >= 0.0 && w <= 1.0)) {
    throw Error(ErrorKind::DomainViolation,
                "covariate " + std::to_string(w) + " outside [0,1]");
  }
}

// Interior minimiser of 0.2 sin(15w) + 0.4w + 0.1: derivative 3 cos(15w) +
// 0.4 vanishes with sin(15w) < 0 at 15w = 2 pi - arccos(-2/15). The next
// local minimum (w ~ 0.724) is higher because of the linear drift, and the
// endpoints give 0.1 and 0.63.
double experiment2_minimiser() {
  return (2.0 * std::numbers::pi - std::acos(-2.0 / 15.0)) / 15.0;
}

// Largest value: local maxima at 15w = arccos(-2/15) + 2 pi k; the last one
// inside [0,1] (k = 2) dominates.
double experiment2_maximiser() {
  return (std::acos(-2.0 / 15.0) + 4.0 * std::numbers::pi) / 15.0;
}

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double fa, double b, double fb, double m, double fm,
                        double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) {
    return left + right + diff / 15.0;
  }
  return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double logistic(double z) noexcept {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double experiment1_prob(double w) {
  require_unit_interval(w);
  return logistic(0.5 * w + 0.1);
}

double experiment2_prob(double w) {
  require_unit_interval(w);
  return 0.2 * std::sin(15.0 * w) + 0.4 * w + 0.1;
}

double experiment3_prob(double w, std::size_t n) {
  require_unit_interval(w);
  if (n == 0) {
    throw Error(ErrorKind::DomainViolation, "sample size must be positive");
  }
  const std::size_t bins = 100 * n;
  auto j = static_cast<std::size_t>(std::floor(w * static_cast<double>(bins))) + 1;
  j = std::min(j, bins);
  return (j % 2 == 1) ? 0.9 : 0.1;
}

DgpSpec::DgpSpec(DgpKind kind, std::string name, ProbabilityFn fn,
                 bool n_dependent, std::optional<double> delta)
    : kind_(kind),
      name_(std::move(name)),
      fn_(std::move(fn)),
      n_dependent_(n_dependent),
      custom_delta_(delta) {}

DgpSpec DgpSpec::experiment1() {
  return DgpSpec(DgpKind::Experiment1, "experiment1",
                 [](double w, std::size_t) { return experiment1_prob(w); },
                 false, std::nullopt);
}

DgpSpec DgpSpec::experiment2() {
  return DgpSpec(DgpKind::Experiment2, "experiment2",
                 [](double w, std::size_t) { return experiment2_prob(w); },
                 false, std::nullopt);
}

DgpSpec DgpSpec::experiment3() {
  return DgpSpec(DgpKind::Experiment3, "experiment3",
                 [](double w, std::size_t n) { return experiment3_prob(w, n); },
                 true, std::nullopt);
}

DgpSpec DgpSpec::experiment(int id) {
  switch (id) {
    case 1: return experiment1();
    case 2: return experiment2();
    case 3: return experiment3();
    default:
      throw Error(ErrorKind::DomainViolation,
                  "unknown experiment " + std::to_string(id));
  }
}

DgpSpec DgpSpec::custom(std::string name, ProbabilityFn fn, bool n_dependent,
                        std::optional<double> delta) {
  return DgpSpec(DgpKind::Custom, std::move(name), std::move(fn), n_dependent,
                 delta);
}

double DgpSpec::probability(double w, std::size_t n) const {
  return fn_(w, n);
}

double delta_of(const DgpSpec& spec, std::size_t n) {
  switch (spec.kind()) {
    case DgpKind::Experiment1:
      // Increasing law: extremes at the endpoints, and 1 - p(1) < p(0).
      return 1.0 - logistic(0.6);
    case DgpKind::Experiment2: {
      const double lo = experiment2_prob(experiment2_minimiser());
      const double hi = experiment2_prob(experiment2_maximiser());
      return std::min(lo, 1.0 - hi);
    }
    case DgpKind::Experiment3:
      return 0.1;
    case DgpKind::Custom:
      break;
  }
  if (spec.custom_delta_) return *spec.custom_delta_;
  constexpr std::size_t kGrid = 1 << 16;
  double lo = 1.0;
  double hi = 0.0;
  for (std::size_t k = 0; k <= kGrid; ++k) {
    const double p = spec.probability(static_cast<double>(k) / kGrid, n);
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  return std::max(0.0, std::min(lo, 1.0 - hi));
}

GeneratedSample generate_sample(const DgpSpec& spec, std::size_t n, Rng& rng) {
  if (n == 0) {
    throw Error(ErrorKind::DomainViolation, "sample size must be positive");
  }
  GeneratedSample out;
  out.units.reserve(n);
  out.sample.observations.reserve(n);
  std::vector<double> pis;
  pis.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    GeneratedUnit u;
    u.w = uniform01(rng);
    u.pi = spec.probability(u.w, n);
    u.x = uniform01(rng) < u.pi ? 1 : 0;
    const int y = uniform01(rng) < u.pi ? 1 : 0;
    u.y0 = y;
    u.y1 = y;
    u.y = u.y0 * (1 - u.x) + u.y1 * u.x;
    out.sample.observations.push_back({u.w, u.x, u.y});
    pis.push_back(u.pi);
    out.units.push_back(u);
  }
  out.sample.true_propensity = std::move(pis);
  out.sample.delta = delta_of(spec, n);
  return out;
}

TrueEstimands true_estimands(const DgpSpec& spec, std::size_t n) {
  double mu = 0.0;
  switch (spec.kind()) {
    case DgpKind::Experiment1:
      // Antiderivative of logistic(0.5 w + 0.1) is 2 ln(1 + e^{0.5 w + 0.1}).
      mu = 2.0 * (std::log1p(std::exp(0.6)) - std::log1p(std::exp(0.1)));
      break;
    case DgpKind::Experiment2:
      mu = (0.2 / 15.0) * (1.0 - std::cos(15.0)) + 0.3;
      break;
    case DgpKind::Experiment3:
      // 100 n bins is even, so 0.1 and 0.9 bins cover equal length.
      mu = 0.5;
      break;
    case DgpKind::Custom:
      mu = integrate_adaptive(
          [&spec, n](double w) { return spec.probability(w, n); }, 0.0, 1.0,
          1e-9);
      break;
  }
  return TrueEstimands{mu, mu, 0.0};
}

double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = simpson(a, b, fa, fm, fb);
  return adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, 50);
}

}  // namespace rctsim
