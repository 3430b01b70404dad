#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace ch::ingest {

// One stop-line crossing observation. `series` is intersection number plus
// in-coming direction letter, e.g. "5e".
struct EventRecord {
  double time_s = 0.0;
  std::string series;
  double count = 1.0;
};

struct EventLog {
  std::vector<EventRecord> records;  // sorted by (time_s, series, count)
};

bool valid_series_name(const std::string& name);

// CSV with header "time_s,series,count"; the count column may be omitted
// (defaults to 1). Malformed rows raise ch::DataError naming the line.
EventLog parse_events(std::istream& in);
EventLog parse_events_file(const std::filesystem::path& path);

void write_events_csv(const EventLog& log, std::ostream& out);
void write_events_csv_file(const EventLog& log, const std::filesystem::path& path);

}  // namespace ch::ingest
