#include "lrr/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace lrr::csv {

int Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<double> Table::values(const std::string& name) const {
  const int c = column(name);
  if (c < 0) throw std::invalid_argument("csv: no column named " + name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row[static_cast<std::size_t>(c)]);
  return out;
}

void write(const std::filesystem::path& path, const Table& table) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("csv: cannot open " + path.string());
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << table.header[i];
  }
  out << '\n';
  char buf[32];
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw std::invalid_argument("csv: row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      if (!std::isnan(row[i])) {
        std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
        out << buf;
      }
    }
    out << '\n';
  }
}

Table read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open " + path.string());
  Table table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: empty file " + path.string());
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) table.header.push_back(cell);

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      const std::string field = line.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      if (field.empty()) {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
      } else {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc() || ptr != field.data() + field.size())
          throw std::runtime_error("csv: bad numeric field '" + field + "' in " +
                                   path.string());
        row.push_back(v);
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (row.size() != table.header.size())
      throw std::runtime_error("csv: ragged row in " + path.string());
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace lrr::csv
