#pragma once

#include <optional>
#include <vector>

#include "rctsim/types.hpp"

namespace fixtures {

inline rctsim::Sample make_sample(const std::vector<double>& ws, const std::vector<int>& xs,
                                  const std::vector<int>& ys,
                                  std::optional<std::vector<double>> pis = std::nullopt,
                                  double delta = 0.1) {
  rctsim::Sample s;
  for (std::size_t i = 0; i < ws.size(); ++i) s.observations.push_back({ws[i], xs[i], ys[i]});
  s.true_propensity = std::move(pis);
  s.delta = delta;
  return s;
}

// Four units (x, y, pi) used for hand-computed HT values.
inline rctsim::Sample four_units() {
  return make_sample({0.1, 0.4, 0.6, 0.9}, {1, 0, 1, 0}, {1, 1, 0, 0},
                     std::vector<double>{0.5, 0.5, 0.5, 0.5}, 0.1);
}

// Twenty-unit fixture shared with the python oracle.
inline const std::vector<double> kWs20 = {0.03, 0.08, 0.12, 0.17, 0.22, 0.26, 0.31,
                                          0.35, 0.41, 0.44, 0.52, 0.57, 0.61, 0.66,
                                          0.70, 0.74, 0.81, 0.86, 0.91, 0.97};
inline const std::vector<int> kXs20 = {0, 1, 0, 0, 1, 0, 1, 1, 0, 1,
                                       0, 1, 1, 0, 1, 0, 1, 1, 0, 1};
inline const std::vector<int> kYs20 = {0, 0, 1, 0, 1, 0, 0, 1, 1, 0,
                                       0, 1, 1, 1, 0, 1, 1, 1, 0, 1};

}  // namespace fixtures
