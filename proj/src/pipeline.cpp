#include "ch/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ch/errors.hpp"
#include "ch/metrics.hpp"
#include "ch/series.hpp"

namespace ch::pipeline {

ingest::Task build_task(const ingest::EventLog& log, const TaskSpec& spec,
                        ingest::NormStats* stats_out) {
  if (spec.tau <= spec.p)
    throw InvalidArgument("task: causality requires tau > p (tau = " +
                          std::to_string(spec.tau) + ", p = " + std::to_string(spec.p) + ")");
  if (!(spec.r > 0.0 && spec.r < 1.0)) throw InvalidArgument("task: r must be in (0, 1)");

  const ingest::SeriesMatrix raw = ingest::bin_counts(log, spec.interval_s);
  const std::size_t T = raw.rows();
  if (T <= static_cast<std::size_t>(spec.tau))
    throw DataError("task: only " + std::to_string(T) + " bins, need more than tau");

  const std::size_t usable = T - static_cast<std::size_t>(spec.tau);
  const auto n_train =
      static_cast<std::size_t>(std::floor(spec.r * static_cast<double>(usable)));
  const std::size_t fit_rows =
      std::min(T, n_train + static_cast<std::size_t>(spec.tau));
  if (fit_rows == 0) throw DataError("task: empty training prefix");

  const ingest::NormStats stats = ingest::fit_norm_stats(raw, fit_rows);
  const ingest::SeriesMatrix scaled = ingest::apply_norm_stats(raw, stats);
  const ingest::FeatureMatrix features = ingest::multiplex(scaled, spec.p);
  ingest::Task task = ingest::make_task(features, spec.target, spec.tau,
                                        spec.exclude, spec.r);
  if (stats_out) *stats_out = stats;
  return task;
}

FittedRun fit_events(const ingest::EventLog& log, const TaskSpec& spec) {
  FittedRun run;
  ingest::NormStats stats;
  run.task = build_task(log, spec, &stats);

  run.model = harvest::fit_ridge(run.task.x_train, run.task.y_train, spec.beta,
                                 spec.intercept);
  run.model.tau = spec.tau;
  run.model.interval_s = spec.interval_s;
  run.model.p = spec.p;
  run.model.feature_labels = run.task.labels;
  run.model.norm_stats = stats;
  run.model.target_name = spec.target;

  run.pred_train = harvest::predict(run.model, run.task.x_train);
  run.pred_test = harvest::predict(run.model, run.task.x_test);
  run.nrmse_train = eval::nrmse(run.task.y_train, run.pred_train);
  run.nrmse_test = eval::nrmse(run.task.y_test, run.pred_test);
  return run;
}

AppliedModel apply_model(const harvest::HarvestModel& model,
                         const ingest::EventLog& log) {
  if (model.feature_labels.empty()) throw InvalidArgument("apply_model: model has no features");

  std::set<std::string> needed;
  for (const auto& l : model.feature_labels) needed.insert(l.series);
  needed.insert(model.target_name);
  const std::vector<std::string> names(needed.begin(), needed.end());

  if (log.records.empty()) throw DataError("apply_model: empty event log");
  // Anchor bins at the log's global start so the rows line up with a task
  // built from the same log even when the earliest event belongs to a
  // series the model does not use.
  const ingest::SeriesMatrix raw =
      ingest::bin_counts(log, model.interval_s, &names, log.records.front().time_s);
  const ingest::SeriesMatrix scaled = ingest::apply_norm_stats(raw, model.norm_stats);

  const std::size_t T = scaled.rows();
  const auto tau = static_cast<std::size_t>(model.tau);
  if (T <= tau) throw DataError("apply_model: not enough bins for the model's tau");
  const std::size_t usable = T - tau;

  DenseMatrix x(usable, model.feature_labels.size());
  for (std::size_t c = 0; c < model.feature_labels.size(); ++c) {
    const auto& label = model.feature_labels[c];
    const std::size_t s = scaled.index_of(label.series);
    const auto lag = static_cast<std::size_t>(label.lag);
    for (std::size_t t = 0; t < usable; ++t) x.at(t, c) = scaled.at(t + lag, s);
  }

  AppliedModel out;
  out.first_target_time = tau;
  const std::size_t target_col = scaled.index_of(model.target_name);
  out.actual.resize(usable);
  for (std::size_t t = 0; t < usable; ++t) out.actual[t] = scaled.at(t + tau, target_col);
  out.predicted = harvest::predict(model, x);
  return out;
}

ingest::EventLog event_log_from_crossings(const traffic::CrossingLog& log) {
  ingest::EventLog out;
  out.records.reserve(log.records.size());
  for (const auto& r : log.records)
    out.records.push_back({r.time_s, r.node + traffic::direction_letter(r.dir), r.count});
  return out;
}

}  // namespace ch::pipeline
