#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ch/pipeline.hpp"

namespace ch::eval {

struct SweepCell {
  int tau = 0;
  double interval_s = 0.0;
  double nrmse = 0.0;       // meaningful only when ok
  std::string status;       // "ok" or "failed: <reason>"
  bool ok() const { return status == "ok"; }
};

// Rectangular (tau x interval) grid of test NRMSEs at fixed p, r, beta.
struct SweepResult {
  std::vector<int> taus;
  std::vector<double> intervals;
  std::vector<SweepCell> cells;  // row-major: taus x intervals
  int p = 0;
  double r = 0.0;
  double beta = 0.0;

  const SweepCell& cell(std::size_t ti, std::size_t ii) const {
    return cells[ti * intervals.size() + ii];
  }
};

// Re-bins the raw events at every interval and refits per cell. Cells that
// violate a precondition (tau <= p, too few bins, ...) are marked failed
// without aborting the sweep; every cell failing is an error.
SweepResult sweep(const ingest::EventLog& log, const pipeline::TaskSpec& base,
                  const std::vector<int>& taus, const std::vector<double>& intervals);

// CSV: tau,interval_s,nrmse,status ("nrmse" empty on failed cells).
void write_sweep_csv(const SweepResult& result, std::ostream& out);
SweepResult read_sweep_csv(std::istream& in);

}  // namespace ch::eval
