#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ch/events.hpp"

namespace ch::ingest {

// Named, binned traffic-volume series. Row t is bin t; bin t covers
// [t0_s + t*interval_s, t0_s + (t+1)*interval_s).
struct SeriesMatrix {
  std::vector<std::string> names;  // M, unique
  std::vector<double> values;      // T * M, row-major
  double interval_s = 1.0;
  double t0_s = 0.0;

  std::size_t rows() const { return names.empty() ? 0 : values.size() / names.size(); }
  std::size_t cols() const { return names.size(); }
  double& at(std::size_t t, std::size_t s) { return values[t * names.size() + s]; }
  double at(std::size_t t, std::size_t s) const { return values[t * names.size() + s]; }
  std::size_t index_of(const std::string& name) const;  // throws DataError if absent
  std::vector<double> column(std::size_t s) const;
};

// Sum event counts into fixed-width bins. Columns are the given names (all
// must appear in the log) or every series present, sorted. t0 defaults to
// the earliest event time.
SeriesMatrix bin_counts(const EventLog& log, double interval_s,
                        const std::vector<std::string>* names = nullptr,
                        std::optional<double> t0 = std::nullopt);

// Per-series min/max over the segment the stats were fitted on.
struct NormStats {
  std::vector<std::string> names;
  std::vector<double> min;
  std::vector<double> max;

  std::size_t index_of(const std::string& name) const;
  bool covers(const std::vector<std::string>& required) const;
};

// Min-max scaling to [0,1] per series. With `stats` null they are computed
// from `m` itself (fitting segment); otherwise the given training stats are
// applied, so test values may fall outside [0,1]. Constant series map to 0.
std::pair<SeriesMatrix, NormStats> normalize(const SeriesMatrix& m,
                                             const NormStats* stats = nullptr);

// Stats from the first `rows` bins only (the training prefix).
NormStats fit_norm_stats(const SeriesMatrix& m, std::size_t rows);
SeriesMatrix apply_norm_stats(const SeriesMatrix& m, const NormStats& stats);

// CSV: first column "t" (bin index), remaining columns named by series.
void write_series_csv(const SeriesMatrix& m, std::ostream& out);
void write_series_csv_file(const SeriesMatrix& m, const std::filesystem::path& path);
SeriesMatrix read_series_csv(std::istream& in);

}  // namespace ch::ingest
