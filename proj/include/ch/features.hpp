#pragma once

#include <string>
#include <vector>

#include "ch/matrix.hpp"
#include "ch/series.hpp"

namespace ch::ingest {

struct FeatureLabel {
  std::string series;
  int lag = 0;

  bool operator==(const FeatureLabel&) const = default;
  bool operator<(const FeatureLabel& o) const {
    return series != o.series ? series < o.series : lag < o.lag;
  }
  std::string text() const {
    return lag == 0 ? series : series + "_lag_" + std::to_string(lag);
  }
};

// Time-multiplexed view: column (s, lag) at row t holds series s at time
// t + lag, lag = 0..p, so the usable row range shrinks by p. F = M * (p + 1).
struct FeatureMatrix {
  std::vector<FeatureLabel> labels;  // F, series-major then lag
  DenseMatrix values;                // (T - p) x F
  int p = 0;
  std::size_t alignment = 0;  // first usable time step (0 here)
  SeriesMatrix source;        // retained so tasks can reach target values
};

FeatureMatrix multiplex(const SeriesMatrix& m, int p);

// Supervised task: row t pairs feature times t..t+p with the target at
// t + tau. tau > p keeps every feature strictly earlier than the predicted
// value. Split is a contiguous prefix of floor(r * usable rows).
struct Task {
  std::vector<FeatureLabel> labels;  // after removing target + excluded series
  DenseMatrix x_train;
  std::vector<double> y_train;
  DenseMatrix x_test;
  std::vector<double> y_test;
  std::string target;
  int tau = 0;
  int p = 0;
  // Absolute time (bin index) of y_train[0] is tau; of y_test[0] is
  // tau + y_train.size().
  std::size_t first_test_time() const { return y_train.size() + static_cast<std::size_t>(tau); }
};

Task make_task(const FeatureMatrix& features, const std::string& target_name,
               int tau, const std::vector<std::string>& exclude, double r);

}  // namespace ch::ingest
