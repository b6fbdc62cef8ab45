#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace nlqm::cli::svg {

enum class Style { line, points, dashed };

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  Style style = Style::line;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  std::vector<Series> series;
};

// Self-contained SVG: frame, ticks, polylines or markers, legend.
std::string render(const Plot& plot);
void write(const std::filesystem::path& path, const Plot& plot);

// "Nice" tick positions covering [lo, hi].
std::vector<double> ticks(double lo, double hi, int target = 6);

}  // namespace nlqm::cli::svg
