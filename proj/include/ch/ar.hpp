#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ch::baseline {

// Direct tau-step autoregression: y(t + tau) regressed on the p most recent
// values y(t-p+1)..y(t) plus a constant term. Coefficients are stored oldest
// first.
struct ARModel {
  int p = 1;
  int tau = 1;
  std::vector<double> coefficients;  // length p
  double intercept = 0.0;
};

// Least-squares fit (minimum-norm when rank-deficient). Needs
// y_train.size() >= p + tau + 1 so at least two regression rows exist.
ARModel fit_ar(std::span<const double> y_train, int p, int tau);

// Sliding application over indices [from, to): the prediction for index t
// uses the actual values y[t-tau-p+1 .. t-tau], never earlier predictions.
// Defaults cover every feasible index of `history`.
std::vector<double> predict_ar(const ARModel& model, std::span<const double> history,
                               std::size_t from, std::size_t to);
std::vector<double> predict_ar(const ARModel& model, std::span<const double> history);

}  // namespace ch::baseline
