#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ch/matrix.hpp"

namespace ch::harvest {

struct OnlineRound {
  std::size_t train_rows = 0;     // rows 0..train_rows-1 were fitted on
  std::size_t predict_begin = 0;  // row range this round predicted
  std::size_t predict_end = 0;
};

// Growing-prefix refit schedule. r1 is the initial training fraction, r2
// controls the refit chunk delta = round((1/r2 - 1) * r1 * T) (minimum 1);
// r1 = r2 degenerates to a single round, i.e. the one-shot fit.
struct OnlineSchedule {
  double r1 = 0.0;
  double r2 = 0.0;
  std::size_t delta = 0;
  std::vector<OnlineRound> rounds;
};

struct OnlineResult {
  std::vector<double> prediction;  // rows round(r1*T)..T-1, concatenated chunks
  OnlineSchedule schedule;
};

OnlineResult online_fit_predict(const DenseMatrix& x, std::span<const double> y,
                                double r1, double r2, double beta,
                                bool intercept = true);

}  // namespace ch::harvest
