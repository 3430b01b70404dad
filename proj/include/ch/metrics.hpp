#pragma once

#include <span>
#include <string>
#include <vector>

#include "ch/ridge.hpp"

namespace ch::eval {

// Root-mean-square error divided by the population standard deviation of
// `actual`; the constant mean predictor scores exactly 1.
double nrmse(std::span<const double> actual, std::span<const double> predicted);

struct RankedFeature {
  std::string series;
  int lag = 0;
  double weight = 0.0;
};

// Features ordered by descending |weight|, ties broken by (series, lag).
// The intercept is not a feature and never appears.
std::vector<RankedFeature> rank_features(const harvest::HarvestModel& model,
                                         std::size_t top_k);

}  // namespace ch::eval
