#pragma once

#include <span>
#include <string>
#include <vector>

#include "ch/features.hpp"
#include "ch/matrix.hpp"
#include "ch/series.hpp"

namespace ch::harvest {

// Linear readout mapping feature rows to the predicted target, plus all the
// alignment metadata needed to rebuild the features from a raw event log.
struct HarvestModel {
  std::vector<double> weights;  // one per feature column
  double intercept = 0.0;
  bool has_intercept = true;
  double beta = 0.0;
  int tau = 0;
  double interval_s = 1.0;
  int p = 0;
  std::vector<ingest::FeatureLabel> feature_labels;
  ingest::NormStats norm_stats;
  std::string target_name;
};

// Ridge solve over the column Gram matrix (X^T X + beta I). The optional
// intercept is an appended constant-1 feature, regularized like any other.
// With beta = 0 the solve goes through an SVD of X with singular values
// below 1e-10 * sigma_max dropped, giving the minimum-norm solution on
// rank-deficient systems.
HarvestModel fit_ridge(const DenseMatrix& x, std::span<const double> y,
                       double beta, bool intercept = true);

std::vector<double> predict(const HarvestModel& model, const DenseMatrix& x);

// ||y - X w - b||^2 + beta * (||w||^2 + b^2): the objective fit_ridge
// minimizes (the intercept term participates only when enabled).
double ridge_objective(const HarvestModel& model, const DenseMatrix& x,
                       std::span<const double> y);

}  // namespace ch::harvest
