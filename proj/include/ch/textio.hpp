#pragma once

#include <string>
#include <vector>

namespace ch::textio {

// Shortest decimal form that round-trips to the same double (std::to_chars).
// Every CSV writer goes through this so reruns are byte-identical.
std::string format_double(double v);

// Strict double parse of a full field; throws ch::DataError on junk.
double parse_double(const std::string& field, const std::string& context);

// Split one CSV line on commas. No quoting: none of our formats needs it.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace ch::textio
