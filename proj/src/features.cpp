#include "ch/features.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ch/errors.hpp"

namespace ch::ingest {

FeatureMatrix multiplex(const SeriesMatrix& m, int p) {
  if (p < 0) throw InvalidArgument("multiplex: p must be >= 0");
  const std::size_t T = m.rows();
  if (static_cast<std::size_t>(p) >= T)
    throw InvalidArgument("multiplex: p = " + std::to_string(p) +
                          " must be smaller than the series length " + std::to_string(T));

  FeatureMatrix f;
  f.p = p;
  f.alignment = 0;
  f.source = m;
  const std::size_t M = m.cols();
  const std::size_t rows = T - static_cast<std::size_t>(p);
  f.values = DenseMatrix(rows, M * static_cast<std::size_t>(p + 1));

  f.labels.reserve(M * static_cast<std::size_t>(p + 1));
  std::size_t col = 0;
  for (std::size_t s = 0; s < M; ++s)
    for (int lag = 0; lag <= p; ++lag, ++col) {
      f.labels.push_back({m.names[s], lag});
      for (std::size_t t = 0; t < rows; ++t)
        f.values.at(t, col) = m.at(t + static_cast<std::size_t>(lag), s);
    }
  return f;
}

Task make_task(const FeatureMatrix& features, const std::string& target_name,
               int tau, const std::vector<std::string>& exclude, double r) {
  if (tau < 1) throw InvalidArgument("make_task: tau must be >= 1");
  if (tau <= features.p)
    throw InvalidArgument("make_task: causality requires tau > p (tau = " +
                          std::to_string(tau) + ", p = " + std::to_string(features.p) + ")");
  if (!(r > 0.0 && r < 1.0)) throw InvalidArgument("make_task: r must be in (0, 1)");

  const SeriesMatrix& src = features.source;
  const std::size_t target_col = src.index_of(target_name);  // throws if absent

  std::set<std::string> drop(exclude.begin(), exclude.end());
  drop.insert(target_name);
  for (const std::string& name : exclude)
    src.index_of(name);  // excluded series must exist

  std::vector<std::size_t> keep;
  Task task;
  for (std::size_t c = 0; c < features.labels.size(); ++c)
    if (!drop.count(features.labels[c].series)) {
      keep.push_back(c);
      task.labels.push_back(features.labels[c]);
    }
  if (keep.empty()) throw InvalidArgument("make_task: no feature columns left");

  const std::size_t T = src.rows();
  const std::size_t usable = T - static_cast<std::size_t>(tau);  // tau > p >= 0, T > p
  if (usable < 2) throw DataError("make_task: series too short for tau");

  const auto n_train = static_cast<std::size_t>(
      std::floor(r * static_cast<double>(usable)));
  if (n_train == 0 || n_train >= usable)
    throw InvalidArgument("make_task: split leaves an empty train or test side");

  DenseMatrix x(usable, keep.size());
  std::vector<double> y(usable);
  for (std::size_t t = 0; t < usable; ++t) {
    for (std::size_t k = 0; k < keep.size(); ++k)
      x.at(t, k) = features.values.at(t, keep[k]);
    y[t] = src.at(t + static_cast<std::size_t>(tau), target_col);
  }

  task.target = target_name;
  task.tau = tau;
  task.p = features.p;
  task.x_train = DenseMatrix(n_train, keep.size());
  task.x_test = DenseMatrix(usable - n_train, keep.size());
  std::copy(x.data.begin(), x.data.begin() + static_cast<long>(n_train * keep.size()),
            task.x_train.data.begin());
  std::copy(x.data.begin() + static_cast<long>(n_train * keep.size()), x.data.end(),
            task.x_test.data.begin());
  task.y_train.assign(y.begin(), y.begin() + static_cast<long>(n_train));
  task.y_test.assign(y.begin() + static_cast<long>(n_train), y.end());
  return task;
}

}  // namespace ch::ingest
