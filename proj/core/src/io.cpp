#include "nlqm/io.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "nlqm/errors.hpp"

namespace nlqm::io {

std::string fmt(double value) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << value;
  return os.str();
}

std::vector<double> CsvTable::column(const std::string& name) const {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] != name) continue;
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(row.at(c));
    return out;
  }
  throw ShapeError("CsvTable: no column '" + name + "'");
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open " + path.string() + " for writing");
  for (const auto& c : table.comments) os << "# " << c << "\n";
  for (std::size_t c = 0; c < table.header.size(); ++c) {
    os << (c ? "," : "") << table.header[c];
  }
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << fmt(row[c]);
    os << "\n";
  }
  if (!os) throw ConfigError("write failed for " + path.string());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      table.comments.push_back(line.size() > 2 ? line.substr(2) : std::string{});
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    if (!have_header) {
      while (std::getline(ss, cell, ',')) table.header.push_back(cell);
      have_header = true;
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ConfigError("non-numeric CSV cell '" + cell + "' in " + path.string());
      }
    }
    if (row.size() != table.header.size()) throw ShapeError("ragged CSV row in " + path.string());
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace nlqm::io
