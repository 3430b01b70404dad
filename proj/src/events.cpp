#include "ch/events.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ch/errors.hpp"
#include "ch/textio.hpp"

namespace ch::ingest {

bool valid_series_name(const std::string& name) {
  if (name.size() < 2) return false;
  for (std::size_t i = 0; i + 1 < name.size(); ++i)
    if (name[i] < '0' || name[i] > '9') return false;
  const char d = name.back();
  return d == 'n' || d == 's' || d == 'e' || d == 'w';
}

EventLog parse_events(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("events: empty input, header expected");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "time_s,series,count" && line != "time_s,series")
    throw DataError("events: bad header '" + line + "', expected time_s,series[,count]");

  EventLog log;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = textio::split_csv_line(line);
    const std::string where = "events line " + std::to_string(lineno);
    if (fields.size() != 2 && fields.size() != 3)
      throw DataError(where + ": expected 2 or 3 fields, got " + std::to_string(fields.size()));

    EventRecord rec;
    rec.time_s = textio::parse_double(fields[0], where + ", time_s");
    if (rec.time_s < 0.0) throw DataError(where + ": negative time " + fields[0]);
    rec.series = fields[1];
    if (!valid_series_name(rec.series))
      throw DataError(where + ": bad series name '" + rec.series +
                      "' (want digits + one of n/s/e/w)");
    rec.count = fields.size() == 3 ? textio::parse_double(fields[2], where + ", count") : 1.0;
    if (rec.count < 0.0) throw DataError(where + ": negative count " + fields[2]);
    log.records.push_back(std::move(rec));
  }

  // Total order so any permutation of the same rows loads identically.
  std::sort(log.records.begin(), log.records.end(),
            [](const EventRecord& a, const EventRecord& b) {
              if (a.time_s != b.time_s) return a.time_s < b.time_s;
              if (a.series != b.series) return a.series < b.series;
              return a.count < b.count;
            });
  return log;
}

EventLog parse_events_file(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw DataError("cannot open events file " + path.string());
  return parse_events(f);
}

void write_events_csv(const EventLog& log, std::ostream& out) {
  out << "time_s,series,count\n";
  for (const EventRecord& r : log.records)
    out << textio::format_double(r.time_s) << ',' << r.series << ','
        << textio::format_double(r.count) << '\n';
}

void write_events_csv_file(const EventLog& log, const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw DataError("cannot write events file " + path.string());
  write_events_csv(log, f);
}

}  // namespace ch::ingest
