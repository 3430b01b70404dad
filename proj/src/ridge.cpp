#include "ch/ridge.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "ch/errors.hpp"

namespace ch::harvest {

namespace {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ConstMap = Eigen::Map<const RowMajorMatrix>;

constexpr double kSingularValueCutoff = 1e-10;

Eigen::MatrixXd augmented(const DenseMatrix& x, bool intercept) {
  ConstMap m(x.data.data(), static_cast<Eigen::Index>(x.rows),
             static_cast<Eigen::Index>(x.cols));
  Eigen::MatrixXd a(m.rows(), m.cols() + (intercept ? 1 : 0));
  a.leftCols(m.cols()) = m;
  if (intercept) a.col(m.cols()).setOnes();
  return a;
}

}  // namespace

HarvestModel fit_ridge(const DenseMatrix& x, std::span<const double> y,
                       double beta, bool intercept) {
  if (x.rows != y.size())
    throw InvalidArgument("fit_ridge: X has " + std::to_string(x.rows) +
                          " rows but y has " + std::to_string(y.size()));
  if (x.rows < 2) throw InvalidArgument("fit_ridge: need at least 2 rows");
  if (x.cols == 0) throw InvalidArgument("fit_ridge: no feature columns");
  if (beta < 0.0) throw InvalidArgument("fit_ridge: beta must be >= 0");
  for (double v : x.data)
    if (!std::isfinite(v)) throw NumericError("fit_ridge: non-finite feature value");
  for (double v : y)
    if (!std::isfinite(v)) throw NumericError("fit_ridge: non-finite target value");

  const Eigen::MatrixXd a = augmented(x, intercept);
  const Eigen::Map<const Eigen::VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));

  // The Gram solve loses roughly lambda_max / beta in conditioning, so a
  // beta far below the Gram scale goes through the SVD instead; beta = 0 is
  // the minimum-norm pseudo-inverse with a relative singular-value cutoff.
  Eigen::MatrixXd gram;
  bool use_gram = beta > 0.0;
  if (use_gram) {
    gram = a.transpose() * a;
    use_gram = beta >= 1e-8 * gram.diagonal().maxCoeff();
  }

  Eigen::VectorXd w;
  if (use_gram) {
    gram.diagonal().array() += beta;
    const Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() == Eigen::Success) {
      w = llt.solve(a.transpose() * yv);
    } else {
      w = gram.ldlt().solve(a.transpose() * yv);
    }
  } else {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    Eigen::VectorXd filter = sv;
    if (beta > 0.0) {
      for (Eigen::Index i = 0; i < filter.size(); ++i)
        filter(i) = sv(i) / (sv(i) * sv(i) + beta);
    } else {
      const double cutoff = sv.size() > 0 ? kSingularValueCutoff * sv(0) : 0.0;
      for (Eigen::Index i = 0; i < filter.size(); ++i)
        filter(i) = sv(i) > cutoff ? 1.0 / sv(i) : 0.0;
    }
    w = svd.matrixV() * filter.asDiagonal() * (svd.matrixU().transpose() * yv);
  }

  if (!w.allFinite()) throw NumericError("fit_ridge: solve produced non-finite weights");

  HarvestModel model;
  model.beta = beta;
  model.has_intercept = intercept;
  model.weights.assign(w.data(), w.data() + x.cols);
  model.intercept = intercept ? w(static_cast<Eigen::Index>(x.cols)) : 0.0;
  return model;
}

std::vector<double> predict(const HarvestModel& model, const DenseMatrix& x) {
  if (x.cols != model.weights.size())
    throw InvalidArgument("predict: X has " + std::to_string(x.cols) +
                          " columns but the model has " +
                          std::to_string(model.weights.size()) + " weights");
  std::vector<double> out(x.rows, model.intercept);
  for (std::size_t r = 0; r < x.rows; ++r) {
    double acc = 0.0;
    const double* row = x.data.data() + r * x.cols;
    for (std::size_t c = 0; c < x.cols; ++c) acc += row[c] * model.weights[c];
    out[r] += acc;
    if (!std::isfinite(out[r])) throw NumericError("predict: non-finite output");
  }
  return out;
}

double ridge_objective(const HarvestModel& model, const DenseMatrix& x,
                       std::span<const double> y) {
  if (x.rows != y.size()) throw InvalidArgument("ridge_objective: row mismatch");
  const std::vector<double> pred = predict(model, x);
  double loss = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double d = pred[i] - y[i];
    loss += d * d;
  }
  double reg = 0.0;
  for (double w : model.weights) reg += w * w;
  if (model.has_intercept) reg += model.intercept * model.intercept;
  return loss + model.beta * reg;
}

}  // namespace ch::harvest
