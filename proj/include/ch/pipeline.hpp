#pragma once

#include <string>
#include <vector>

#include "ch/events.hpp"
#include "ch/features.hpp"
#include "ch/lattice.hpp"
#include "ch/ridge.hpp"

namespace ch::pipeline {

// The free parameters of one prediction experiment.
struct TaskSpec {
  std::string target;
  int tau = 7;
  double interval_s = 18.0;
  int p = 6;
  double beta = 1e-3;
  double r = 0.8;
  std::vector<std::string> exclude;
  bool intercept = true;
};

// Bin the log, fit min-max stats on the training prefix, scale, multiplex,
// and split. The normalization prefix is everything training can see:
// feature times up to n_train - 1 + p and target times up to n_train - 1 +
// tau, i.e. the first n_train + tau bins.
ingest::Task build_task(const ingest::EventLog& log, const TaskSpec& spec,
                        ingest::NormStats* stats_out = nullptr);

struct FittedRun {
  harvest::HarvestModel model;
  ingest::Task task;
  std::vector<double> pred_train;
  std::vector<double> pred_test;
  double nrmse_train = 0.0;
  double nrmse_test = 0.0;
};

FittedRun fit_events(const ingest::EventLog& log, const TaskSpec& spec);

// Rebuild the model's feature columns from a (possibly different) event log
// and predict over every usable row. Both series are in the model's
// normalized units.
struct AppliedModel {
  std::vector<double> actual;
  std::vector<double> predicted;
  std::size_t first_target_time = 0;  // bin index of actual[0]
};

AppliedModel apply_model(const harvest::HarvestModel& model,
                         const ingest::EventLog& log);

ingest::EventLog event_log_from_crossings(const traffic::CrossingLog& log);

}  // namespace ch::pipeline
