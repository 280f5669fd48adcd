#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace mpcoh::csv {

/// Shortest representation that parses back to the same double.
std::string format(double value);

/// Comma-separated row terminated by a single LF.
void write_row(std::ostream& os, const std::vector<std::string>& fields);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name; throws ParameterError when absent.
  std::size_t column(std::string_view name) const;
};

Table read(std::istream& is);

/// Parses a full field as a double ("nan" accepted). Throws ParameterError.
double parse_double(std::string_view field);

}  // namespace mpcoh::csv
