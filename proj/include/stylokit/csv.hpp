#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace stylokit::csv {

// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

// RFC 4180 quoting: fields containing comma, quote, CR or LF are quoted.
std::string escape_field(std::string_view field);

std::string join_row(const std::vector<std::string>& fields);

// Parses one logical CSV record (handles quoted fields; no embedded
// newlines inside quotes, which none of our writers produce).
std::vector<std::string> split_row(std::string_view line);

} // namespace stylokit::csv
