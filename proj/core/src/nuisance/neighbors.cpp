#include "rctsim/nuisance/neighbors.hpp"

#include <algorithm>
#include <cmath>

#include "rctsim/error.hpp"

namespace rctsim {

std::size_t nearest_neighbor(double query, std::span<const double> candidates) {
  if (candidates.empty()) {
    throw Error(ErrorKind::EmptyCandidates, "no candidates to match against");
  }
  std::size_t best = 0;
  double best_distance = std::abs(query - candidates[0]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double d = std::abs(query - candidates[i]);
    if (d < best_distance) {
      best_distance = d;
      best = i;
    }
  }
  return best;
}

NearestNeighborIndex::NearestNeighborIndex(std::span<const double> candidates) {
  if (candidates.empty()) {
    throw Error(ErrorKind::EmptyCandidates, "no candidates to match against");
  }
  entries_.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    entries_.emplace_back(candidates[i], i);
  }
  std::sort(entries_.begin(), entries_.end());
}

std::size_t NearestNeighborIndex::nearest(double query) const {
  auto by_value = [](const std::pair<double, std::size_t>& e, double v) {
    return e.first < v;
  };
  // First entry with value >= query; within a run of equal values the first
  // entry carries the smallest index.
  const auto right = std::lower_bound(entries_.begin(), entries_.end(), query, by_value);
  if (right == entries_.begin()) return right->second;
  const double left_value = std::prev(right)->first;
  const auto left = std::lower_bound(entries_.begin(), right, left_value, by_value);
  if (right == entries_.end()) return left->second;

  const double dl = std::abs(query - left->first);
  const double dr = std::abs(query - right->first);
  if (dl < dr) return left->second;
  if (dr < dl) return right->second;
  return std::min(left->second, right->second);
}

double cao_weight(double pi) {
  if (!(pi > 0.0 && pi < 1.0)) {
    throw Error(ErrorKind::DomainViolation,
                "propensity " + std::to_string(pi) + " outside (0,1)");
  }
  return (1.0 - pi) / (pi * pi);
}

std::vector<double> cao_weights(std::span<const double> pis) {
  std::vector<double> out;
  out.reserve(pis.size());
  for (std::size_t i = 0; i < pis.size(); ++i) {
    if (!(pis[i] > 0.0 && pis[i] < 1.0)) {
      throw Error(ErrorKind::DomainViolation, "propensity outside (0,1)", i);
    }
    out.push_back(cao_weight(pis[i]));
  }
  return out;
}

}  // namespace rctsim
