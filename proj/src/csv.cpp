#include "mpcoh/csv.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "mpcoh/errors.hpp"

namespace mpcoh::csv {

std::string format(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) os << ',';
    os << fields[i];
  }
  os << '\n';
}

std::size_t Table::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw ParameterError("CSV is missing column '" + std::string(name) + "'");
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

Table read(std::istream& is) {
  Table table;
  std::string line;
  if (!std::getline(is, line)) throw ParameterError("CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  table.header = split(line);
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto row = split(line);
    if (row.size() != table.header.size()) {
      throw ParameterError("CSV row has " + std::to_string(row.size()) + " fields, header has " +
                           std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

double parse_double(std::string_view field) {
  double value = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw ParameterError("not a number: '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace mpcoh::csv
