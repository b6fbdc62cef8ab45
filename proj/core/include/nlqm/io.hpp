#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace nlqm::io {

// 17 significant digits, so values round-trip exactly.
std::string fmt(double value);

struct CsvTable {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::vector<double> column(const std::string& name) const;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace nlqm::io
