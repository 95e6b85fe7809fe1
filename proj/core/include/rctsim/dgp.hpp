#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rctsim/random.hpp"
#include "rctsim/types.hpp"

namespace rctsim {

/// e^z / (1 + e^z), evaluated without overflow for any finite z.
double logistic(double z) noexcept;

/// logistic(0.5 w + 0.1). Throws DomainViolation for w outside [0,1].
double experiment1_prob(double w);

/// 0.2 sin(15 w) + 0.4 w + 0.1, angle in radians.
double experiment2_prob(double w);

/// Alternating-bin law: B = 100 n equal bins, bin j = floor(w B) + 1 (w = 1
/// falls in bin B); 0.9 on odd bins, 0.1 on even bins.
double experiment3_prob(double w, std::size_t n);

enum class DgpKind { Experiment1, Experiment2, Experiment3, Custom };

/// Probability law used for both P(X = 1 | W) and P(Y = 1 | W) under the
/// sharp null Y(1) = Y(0).
class DgpSpec {
 public:
  using ProbabilityFn = std::function<double(double w, std::size_t n)>;

  static DgpSpec experiment1();
  static DgpSpec experiment2();
  static DgpSpec experiment3();
  /// Experiments 1..3 by number; throws DomainViolation otherwise.
  static DgpSpec experiment(int id);
  /// A user-supplied law. When `delta` is absent it is found by a dense grid
  /// scan of [0,1].
  static DgpSpec custom(std::string name, ProbabilityFn fn,
                        bool n_dependent = false,
                        std::optional<double> delta = std::nullopt);

  DgpKind kind() const noexcept { return kind_; }
  bool n_dependent() const noexcept { return n_dependent_; }
  const std::string& name() const noexcept { return name_; }
  double probability(double w, std::size_t n) const;

 private:
  friend double delta_of(const DgpSpec& spec, std::size_t n);

  DgpSpec(DgpKind kind, std::string name, ProbabilityFn fn, bool n_dependent,
          std::optional<double> delta);

  DgpKind kind_;
  std::string name_;
  ProbabilityFn fn_;
  bool n_dependent_;
  std::optional<double> custom_delta_;
};

/// min(min_w p(w), 1 - max_w p(w)) for the law at sample size n.
double delta_of(const DgpSpec& spec, std::size_t n);

/// Full record of a simulated unit, including both potential outcomes.
struct GeneratedUnit {
  double w = 0.0;
  double pi = 0.0;
  int y0 = 0;
  int y1 = 0;
  int x = 0;
  int y = 0;
};

struct GeneratedSample {
  Sample sample;
  std::vector<GeneratedUnit> units;
};

/// Draws n i.i.d. units: w ~ U(0,1), then x ~ Bernoulli(p(w)) and,
/// independently given w, y ~ Bernoulli(p(w)); y0 = y1 = y.
/// Per unit the stream is consumed in the fixed order w, x, y.
GeneratedSample generate_sample(const DgpSpec& spec, std::size_t n, Rng& rng);

/// Population truths. Under the sharp null ate = 0 and mu1 = mu0 = E[p(W)].
TrueEstimands true_estimands(const DgpSpec& spec, std::size_t n);

/// Adaptive Simpson quadrature on [a, b] to absolute tolerance `tol`.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double tol);

}  // namespace rctsim
