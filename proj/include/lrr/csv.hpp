#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace lrr::csv {

/// Numeric table with a header row. Missing values round-trip as empty cells
/// (NaN in memory).
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;  // -1 when absent
  std::vector<double> values(const std::string& name) const;
};

void write(const std::filesystem::path& path, const Table& table);
Table read(const std::filesystem::path& path);

}  // namespace lrr::csv
