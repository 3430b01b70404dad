#include "ch/ablate.hpp"

#include <set>

#include "ch/errors.hpp"

namespace ch::harvest {

std::vector<std::size_t> surviving_columns(
    const std::vector<ingest::FeatureLabel>& labels,
    const std::vector<std::string>& removed_series) {
  std::set<std::string> removed(removed_series.begin(), removed_series.end());
  std::set<std::string> present;
  for (const auto& l : labels) present.insert(l.series);
  for (const std::string& name : removed)
    if (!present.count(name))
      throw InvalidArgument("ablate: series '" + name + "' is not among the features");

  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < labels.size(); ++c)
    if (!removed.count(labels[c].series)) keep.push_back(c);
  if (keep.empty()) throw InvalidArgument("ablate: removal empties the feature set");
  return keep;
}

HarvestModel ablate_fixed(const HarvestModel& model,
                          const std::vector<std::string>& removed_series) {
  const auto keep = surviving_columns(model.feature_labels, removed_series);
  HarvestModel out = model;
  out.weights.clear();
  out.feature_labels.clear();
  for (std::size_t c : keep) {
    out.weights.push_back(model.weights[c]);
    out.feature_labels.push_back(model.feature_labels[c]);
  }
  return out;
}

HarvestModel ablate_relearn(const HarvestModel& model, const DenseMatrix& x_train,
                            std::span<const double> y_train,
                            const std::vector<std::string>& removed_series) {
  if (x_train.cols != model.feature_labels.size())
    throw InvalidArgument("ablate: training matrix does not match the model's features");
  const auto keep = surviving_columns(model.feature_labels, removed_series);
  const DenseMatrix reduced = select_columns(x_train, keep);

  HarvestModel out = fit_ridge(reduced, y_train, model.beta, model.has_intercept);
  out.tau = model.tau;
  out.interval_s = model.interval_s;
  out.p = model.p;
  out.norm_stats = model.norm_stats;
  out.target_name = model.target_name;
  for (std::size_t c : keep) out.feature_labels.push_back(model.feature_labels[c]);
  return out;
}

}  // namespace ch::harvest
