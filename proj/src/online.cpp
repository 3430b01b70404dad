#include "ch/online.hpp"

#include <algorithm>
#include <cmath>

#include "ch/errors.hpp"
#include "ch/ridge.hpp"

namespace ch::harvest {

OnlineResult online_fit_predict(const DenseMatrix& x, std::span<const double> y,
                                double r1, double r2, double beta,
                                bool intercept) {
  if (x.rows != y.size()) throw InvalidArgument("online_fit_predict: row mismatch");
  if (!(r1 > 0.0 && r1 <= r2 && r2 <= 1.0))
    throw InvalidArgument("online_fit_predict: need 0 < r1 <= r2 <= 1");

  const auto T = static_cast<double>(x.rows);
  const auto n0 = static_cast<std::size_t>(std::lround(r1 * T));
  if (n0 < 2) throw InvalidArgument("online_fit_predict: initial training split too small");
  if (n0 >= x.rows)
    throw InvalidArgument("online_fit_predict: nothing left to predict after r1 split");

  const double raw_delta = (1.0 / r2 - 1.0) * r1 * T;
  if (raw_delta <= 0.0)
    throw InvalidArgument("online_fit_predict: delta is 0, schedule cannot advance");
  const auto delta = static_cast<std::size_t>(std::max<long>(1, std::lround(raw_delta)));

  OnlineResult result;
  result.schedule.r1 = r1;
  result.schedule.r2 = r2;
  result.schedule.delta = delta;
  result.prediction.reserve(x.rows - n0);

  std::size_t train_end = n0;
  while (train_end < x.rows) {
    const std::size_t chunk = std::min(delta, x.rows - train_end);

    DenseMatrix x_fit(train_end, x.cols);
    std::copy(x.data.begin(), x.data.begin() + static_cast<long>(train_end * x.cols),
              x_fit.data.begin());
    const HarvestModel model =
        fit_ridge(x_fit, y.subspan(0, train_end), beta, intercept);

    DenseMatrix x_chunk(chunk, x.cols);
    std::copy(x.data.begin() + static_cast<long>(train_end * x.cols),
              x.data.begin() + static_cast<long>((train_end + chunk) * x.cols),
              x_chunk.data.begin());
    const std::vector<double> pred = predict(model, x_chunk);
    result.prediction.insert(result.prediction.end(), pred.begin(), pred.end());

    result.schedule.rounds.push_back({train_end, train_end, train_end + chunk});
    train_end += chunk;
  }
  return result;
}

}  // namespace ch::harvest
