#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace rctsim {

/// Index of the candidate closest to `query` in absolute distance; ties go
/// to the smallest index. Linear scan. Throws EmptyCandidates.
std::size_t nearest_neighbor(double query, std::span<const double> candidates);

/// Sorted index answering the same query as nearest_neighbor in O(log n),
/// with identical tie-breaking.
class NearestNeighborIndex {
 public:
  explicit NearestNeighborIndex(std::span<const double> candidates);

  std::size_t nearest(double query) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<std::pair<double, std::size_t>> entries_;  // (value, index) ascending
};

/// (1 - pi) / pi^2: fitting weights under which the regression-adjusted
/// treated-arm mean is at least as efficient as plain inverse weighting.
/// Throws DomainViolation unless 0 < pi < 1.
double cao_weight(double pi);
std::vector<double> cao_weights(std::span<const double> pis);

}  // namespace rctsim
