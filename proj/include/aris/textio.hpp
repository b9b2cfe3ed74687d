#pragma once

#include <string>
#include <vector>

namespace aris {

// Shortest decimal string that round-trips the exact double value.
std::string format_double(double value);

// RFC-4180 field encoding: quotes only when the value needs it.
std::string csv_field(const std::string& raw);

// Splits one CSV record, honoring quoted fields and doubled-quote escapes.
// Throws std::runtime_error on malformed quoting.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace aris
