#include "ch/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "ch/errors.hpp"

namespace ch::eval {

double nrmse(std::span<const double> actual, std::span<const double> predicted) {
  if (actual.size() != predicted.size())
    throw InvalidArgument("nrmse: series lengths differ");
  if (actual.size() < 2) throw InvalidArgument("nrmse: need at least 2 samples");

  const auto n = static_cast<double>(actual.size());
  double mean = 0.0;
  for (double v : actual) mean += v;
  mean /= n;

  double var = 0.0, mse = 0.0;
  for (std::size_t i = 0; i < actual.size(); ++i) {
    const double c = actual[i] - mean;
    var += c * c;
    const double d = predicted[i] - actual[i];
    mse += d * d;
  }
  var /= n;
  mse /= n;
  if (var <= 0.0) throw NumericError("nrmse: actual series has zero variance");
  return std::sqrt(mse) / std::sqrt(var);
}

std::vector<RankedFeature> rank_features(const harvest::HarvestModel& model,
                                         std::size_t top_k) {
  if (top_k < 1) throw InvalidArgument("rank_features: top_k must be >= 1");
  std::vector<RankedFeature> all;
  all.reserve(model.weights.size());
  for (std::size_t i = 0; i < model.weights.size(); ++i)
    all.push_back({model.feature_labels[i].series, model.feature_labels[i].lag,
                   model.weights[i]});
  std::sort(all.begin(), all.end(), [](const RankedFeature& a, const RankedFeature& b) {
    const double ma = std::fabs(a.weight), mb = std::fabs(b.weight);
    if (ma != mb) return ma > mb;
    if (a.series != b.series) return a.series < b.series;
    return a.lag < b.lag;
  });
  if (all.size() > top_k) all.resize(top_k);
  return all;
}

}  // namespace ch::eval
