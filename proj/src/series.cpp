#include "ch/series.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ch/errors.hpp"
#include "ch/textio.hpp"

namespace ch::ingest {

std::size_t SeriesMatrix::index_of(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw DataError("series '" + name + "' not present");
  return static_cast<std::size_t>(it - names.begin());
}

std::vector<double> SeriesMatrix::column(std::size_t s) const {
  std::vector<double> col(rows());
  for (std::size_t t = 0; t < col.size(); ++t) col[t] = at(t, s);
  return col;
}

SeriesMatrix bin_counts(const EventLog& log, double interval_s,
                        const std::vector<std::string>* names,
                        std::optional<double> t0) {
  if (interval_s <= 0.0) throw InvalidArgument("bin_counts: interval_s must be > 0");

  SeriesMatrix m;
  m.interval_s = interval_s;

  if (names) {
    std::set<std::string> present;
    for (const EventRecord& r : log.records) present.insert(r.series);
    std::string missing;
    for (const std::string& n : *names)
      if (!present.count(n)) missing += missing.empty() ? n : ", " + n;
    if (!missing.empty())
      throw DataError("bin_counts: series not present in the log: " + missing);
    m.names = *names;
  } else {
    std::set<std::string> uniq;
    for (const EventRecord& r : log.records) uniq.insert(r.series);
    m.names.assign(uniq.begin(), uniq.end());
  }

  std::map<std::string, std::size_t> col;
  for (std::size_t s = 0; s < m.names.size(); ++s) col[m.names[s]] = s;

  // Span over the kept events.
  double tmin = 0.0, tmax = 0.0;
  bool any = false;
  for (const EventRecord& r : log.records) {
    if (!col.count(r.series)) continue;
    if (!any) {
      tmin = tmax = r.time_s;
      any = true;
    } else {
      tmin = std::min(tmin, r.time_s);
      tmax = std::max(tmax, r.time_s);
    }
  }
  if (!any) throw DataError("bin_counts: no events, span is empty");

  m.t0_s = t0.value_or(tmin);
  if (tmin < m.t0_s) throw DataError("bin_counts: events before the start time t0");

  const std::size_t T =
      static_cast<std::size_t>(std::floor((tmax - m.t0_s) / interval_s)) + 1;
  m.values.assign(T * m.names.size(), 0.0);
  for (const EventRecord& r : log.records) {
    const auto it = col.find(r.series);
    if (it == col.end()) continue;
    const auto b = static_cast<std::size_t>(std::floor((r.time_s - m.t0_s) / interval_s));
    m.at(std::min(b, T - 1), it->second) += r.count;
  }
  return m;
}

std::size_t NormStats::index_of(const std::string& name) const {
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw DataError("norm stats: series '" + name + "' not present");
  return static_cast<std::size_t>(it - names.begin());
}

bool NormStats::covers(const std::vector<std::string>& required) const {
  for (const std::string& n : required)
    if (std::find(names.begin(), names.end(), n) == names.end()) return false;
  return true;
}

NormStats fit_norm_stats(const SeriesMatrix& m, std::size_t rows) {
  if (rows == 0 || rows > m.rows())
    throw InvalidArgument("fit_norm_stats: fitting segment must cover 1.." +
                          std::to_string(m.rows()) + " rows");
  NormStats st;
  st.names = m.names;
  st.min.resize(m.cols());
  st.max.resize(m.cols());
  for (std::size_t s = 0; s < m.cols(); ++s) {
    double lo = m.at(0, s), hi = m.at(0, s);
    for (std::size_t t = 1; t < rows; ++t) {
      lo = std::min(lo, m.at(t, s));
      hi = std::max(hi, m.at(t, s));
    }
    st.min[s] = lo;
    st.max[s] = hi;
  }
  return st;
}

SeriesMatrix apply_norm_stats(const SeriesMatrix& m, const NormStats& stats) {
  if (!stats.covers(m.names))
    throw InvalidArgument("normalize: given stats do not cover all series");
  SeriesMatrix out = m;
  for (std::size_t s = 0; s < m.cols(); ++s) {
    const std::size_t k = stats.index_of(m.names[s]);
    const double lo = stats.min[k];
    const double range = stats.max[k] - stats.min[k];
    for (std::size_t t = 0; t < m.rows(); ++t)
      out.at(t, s) = range > 0.0 ? (m.at(t, s) - lo) / range : 0.0;
  }
  return out;
}

std::pair<SeriesMatrix, NormStats> normalize(const SeriesMatrix& m,
                                             const NormStats* stats) {
  NormStats st = stats ? *stats : fit_norm_stats(m, m.rows());
  return {apply_norm_stats(m, st), std::move(st)};
}

void write_series_csv(const SeriesMatrix& m, std::ostream& out) {
  out << 't';
  for (const std::string& n : m.names) out << ',' << n;
  out << '\n';
  for (std::size_t t = 0; t < m.rows(); ++t) {
    out << t;
    for (std::size_t s = 0; s < m.cols(); ++s)
      out << ',' << textio::format_double(m.at(t, s));
    out << '\n';
  }
}

void write_series_csv_file(const SeriesMatrix& m, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write series file " + path.string());
  write_series_csv(m, f);
}

SeriesMatrix read_series_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("series csv: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  auto header = textio::split_csv_line(line);
  if (header.empty() || header[0] != "t")
    throw DataError("series csv: first column must be 't'");

  SeriesMatrix m;
  m.names.assign(header.begin() + 1, header.end());
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = textio::split_csv_line(line);
    if (fields.size() != header.size())
      throw DataError("series csv line " + std::to_string(lineno) + ": field count mismatch");
    for (std::size_t s = 1; s < fields.size(); ++s)
      m.values.push_back(textio::parse_double(
          fields[s], "series csv line " + std::to_string(lineno)));
  }
  if (m.values.empty()) throw DataError("series csv: no data rows");
  return m;
}

}  // namespace ch::ingest
