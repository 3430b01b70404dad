#include "ch/sweep.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "ch/errors.hpp"
#include "ch/textio.hpp"

namespace ch::eval {

SweepResult sweep(const ingest::EventLog& log, const pipeline::TaskSpec& base,
                  const std::vector<int>& taus, const std::vector<double>& intervals) {
  if (taus.empty() || intervals.empty())
    throw InvalidArgument("sweep: tau and interval ranges must be non-empty");

  SweepResult result;
  result.taus = taus;
  result.intervals = intervals;
  result.p = base.p;
  result.r = base.r;
  result.beta = base.beta;
  result.cells.reserve(taus.size() * intervals.size());

  std::size_t ok_count = 0;
  for (int tau : taus)
    for (double interval : intervals) {
      SweepCell cell;
      cell.tau = tau;
      cell.interval_s = interval;
      pipeline::TaskSpec spec = base;
      spec.tau = tau;
      spec.interval_s = interval;
      try {
        cell.nrmse = pipeline::fit_events(log, spec).nrmse_test;
        cell.status = "ok";
        ++ok_count;
      } catch (const Error& e) {
        cell.status = std::string("failed: ") + e.what();
      }
      result.cells.push_back(std::move(cell));
    }

  if (ok_count == 0) throw DataError("sweep: every cell failed");
  return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << "tau,interval_s,nrmse,status\n";
  for (const SweepCell& c : result.cells) {
    out << c.tau << ',' << textio::format_double(c.interval_s) << ',';
    if (c.ok()) out << textio::format_double(c.nrmse);
    // Reasons may contain commas; keep the status field last and unquoted
    // but comma-free.
    std::string status = c.status;
    std::replace(status.begin(), status.end(), ',', ';');
    out << ',' << status << '\n';
  }
}

SweepResult read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("sweep csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "tau,interval_s,nrmse,status")
    throw DataError("sweep csv: unexpected header '" + line + "'");

  SweepResult result;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = textio::split_csv_line(line);
    const std::string where = "sweep csv line " + std::to_string(lineno);
    if (fields.size() != 4) throw DataError(where + ": expected 4 fields");
    SweepCell cell;
    cell.tau = static_cast<int>(textio::parse_double(fields[0], where + ", tau"));
    cell.interval_s = textio::parse_double(fields[1], where + ", interval");
    cell.status = fields[3];
    if (cell.ok()) cell.nrmse = textio::parse_double(fields[2], where + ", nrmse");
    if (std::find(result.taus.begin(), result.taus.end(), cell.tau) == result.taus.end())
      result.taus.push_back(cell.tau);
    if (std::find(result.intervals.begin(), result.intervals.end(), cell.interval_s) ==
        result.intervals.end())
      result.intervals.push_back(cell.interval_s);
    result.cells.push_back(std::move(cell));
  }
  if (result.cells.empty()) throw DataError("sweep csv: no cells");
  if (result.cells.size() != result.taus.size() * result.intervals.size())
    throw DataError("sweep csv: grid is not rectangular");
  return result;
}

}  // namespace ch::eval
