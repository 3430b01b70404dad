#include "ch/ar.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "ch/errors.hpp"

namespace ch::baseline {

ARModel fit_ar(std::span<const double> y_train, int p, int tau) {
  if (p < 1) throw InvalidArgument("fit_ar: p must be >= 1");
  if (tau < 1) throw InvalidArgument("fit_ar: tau must be >= 1");
  const std::size_t need = static_cast<std::size_t>(p) + static_cast<std::size_t>(tau) + 1;
  if (y_train.size() < need)
    throw InvalidArgument("fit_ar: series of length " + std::to_string(y_train.size()) +
                          " is too short, need >= " + std::to_string(need));
  for (double v : y_train)
    if (!std::isfinite(v)) throw NumericError("fit_ar: non-finite value in series");

  const std::size_t rows = y_train.size() - static_cast<std::size_t>(p + tau) + 1;
  Eigen::MatrixXd x(rows, p + 1);
  Eigen::VectorXd y(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (int j = 0; j < p; ++j) x(static_cast<Eigen::Index>(i), j) = y_train[i + j];
    x(static_cast<Eigen::Index>(i), p) = 1.0;
    y(static_cast<Eigen::Index>(i)) =
        y_train[i + static_cast<std::size_t>(p) - 1 + static_cast<std::size_t>(tau)];
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd w = svd.solve(y);
  if (!w.allFinite()) throw NumericError("fit_ar: solve produced non-finite coefficients");

  ARModel model;
  model.p = p;
  model.tau = tau;
  model.coefficients.assign(w.data(), w.data() + p);
  model.intercept = w(p);
  return model;
}

std::vector<double> predict_ar(const ARModel& model, std::span<const double> history,
                               std::size_t from, std::size_t to) {
  const auto window = static_cast<std::size_t>(model.p + model.tau);
  if (from + 1 < window)
    throw InvalidArgument("predict_ar: index " + std::to_string(from) +
                          " has no full history window");
  if (to > history.size()) throw InvalidArgument("predict_ar: range beyond history");
  if (from > to) throw InvalidArgument("predict_ar: empty or inverted range");

  std::vector<double> out;
  out.reserve(to - from);
  for (std::size_t t = from; t < to; ++t) {
    const std::size_t start = t + 1 - window;  // index of y(t - tau - p + 1)
    double v = model.intercept;
    for (int j = 0; j < model.p; ++j)
      v += model.coefficients[static_cast<std::size_t>(j)] *
           history[start + static_cast<std::size_t>(j)];
    out.push_back(v);
  }
  return out;
}

std::vector<double> predict_ar(const ARModel& model, std::span<const double> history) {
  const auto window = static_cast<std::size_t>(model.p + model.tau);
  if (history.size() < window) throw InvalidArgument("predict_ar: history too short");
  return predict_ar(model, history, window - 1, history.size());
}

}  // namespace ch::baseline
