#include "nlqm_cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <locale>
#include <sstream>

#include "nlqm/errors.hpp"

namespace nlqm::cli::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string tick_label(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  if (v != 0.0 && (std::abs(v) < 1e-3 || std::abs(v) >= 1e4)) {
    os << std::setprecision(2) << std::scientific << v;
  } else {
    os << std::setprecision(4) << v;
  }
  return os.str();
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void widen() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    } else if (hi - lo <= 1e-300) {
      const double pad = std::max(std::abs(lo) * 0.1, 1e-12);
      lo -= pad;
      hi += pad;
    }
  }
};

}  // namespace

std::vector<double> ticks(double lo, double hi, int target) {
  if (!(hi > lo) || target < 1) return {lo};
  const double raw = (hi - lo) / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> out;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) {
    out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
  }
  return out;
}

std::string render(const Plot& plot) {
  Range xr, yr;
  for (const Series& s : plot.series) {
    if (s.x.size() != s.y.size()) throw ShapeError("svg: series '" + s.label + "' x/y lengths differ");
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (plot.log_x && !(s.x[k] > 0.0)) continue;
      xr.add(plot.log_x ? std::log10(s.x[k]) : s.x[k]);
      yr.add(s.y[k]);
    }
  }
  xr.widen();
  yr.widen();
  const double pad = 0.05 * (yr.hi - yr.lo);
  yr.lo -= pad;
  yr.hi += pad;

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << escape(plot.title) << "</text>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  if (plot.log_x) {
    for (int e = static_cast<int>(std::floor(xr.lo)); e <= static_cast<int>(std::ceil(xr.hi)); ++e) {
      for (int m = 1; m < 10; ++m) {
        const double v = std::log10(m * std::pow(10.0, e));
        if (v < xr.lo - 1e-12 || v > xr.hi + 1e-12) continue;
        const double x = px(v);
        os << "<line x1=\"" << x << "\" y1=\"" << kTop + ph << "\" x2=\"" << x << "\" y2=\""
           << kTop + ph + (m == 1 ? 6 : 3) << "\" stroke=\"black\"/>\n";
        if (m == 1 || (xr.hi - xr.lo < 1.5 && (m == 2 || m == 5))) {
          os << "<text x=\"" << x << "\" y=\"" << kTop + ph + 20 << "\" text-anchor=\"middle\">"
             << tick_label(std::pow(10.0, v)) << "</text>\n";
        }
      }
    }
  } else {
    for (double v : ticks(xr.lo, xr.hi)) {
      const double x = px(v);
      os << "<line x1=\"" << x << "\" y1=\"" << kTop + ph << "\" x2=\"" << x << "\" y2=\""
         << kTop + ph + 5 << "\" stroke=\"black\"/>\n";
      os << "<text x=\"" << x << "\" y=\"" << kTop + ph + 20 << "\" text-anchor=\"middle\">"
         << tick_label(v) << "</text>\n";
    }
  }
  for (double v : ticks(yr.lo, yr.hi)) {
    const double y = py(v);
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << y << "\" x2=\"" << kLeft << "\" y2=\"" << y
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << tick_label(v)
       << "</text>\n";
  }
  if (yr.lo < 0.0 && yr.hi > 0.0) {
    os << "<line x1=\"" << kLeft << "\" y1=\"" << py(0.0) << "\" x2=\"" << kLeft + pw << "\" y2=\""
       << py(0.0) << "\" stroke=\"#999\" stroke-dasharray=\"2,3\"/>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">"
     << escape(plot.x_label) << "</text>\n";
  os << "<text transform=\"translate(16," << kTop + ph / 2 << ") rotate(-90)\" text-anchor=\"middle\">"
     << escape(plot.y_label) << "</text>\n";

  for (std::size_t i = 0; i < plot.series.size(); ++i) {
    const Series& s = plot.series[i];
    const char* color = kColors[i % std::size(kColors)];
    std::ostringstream pts;
    pts.imbue(std::locale::classic());
    pts << std::fixed << std::setprecision(2);
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (!std::isfinite(s.y[k]) || (plot.log_x && !(s.x[k] > 0.0))) continue;
      const double x = px(plot.log_x ? std::log10(s.x[k]) : s.x[k]);
      const double y = py(s.y[k]);
      if (s.style == Style::points) {
        os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      } else {
        pts << x << ',' << y << ' ';
      }
    }
    if (s.style != Style::points) {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"";
      if (s.style == Style::dashed) os << " stroke-dasharray=\"6,4\"";
      os << " points=\"" << pts.str() << "\"/>\n";
    }
    const double ly = kTop + 14 + 16 * static_cast<double>(i);
    const double lx = kLeft + pw - 150;
    if (s.style == Style::points) {
      os << "<circle cx=\"" << lx + 10 << "\" cy=\"" << ly - 4 << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    } else {
      os << "<line x1=\"" << lx << "\" y1=\"" << ly - 4 << "\" x2=\"" << lx + 20 << "\" y2=\"" << ly - 4
         << "\" stroke=\"" << color << "\" stroke-width=\"1.5\""
         << (s.style == Style::dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    }
    os << "<text x=\"" << lx + 26 << "\" y=\"" << ly << "\">" << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write(const std::filesystem::path& path, const Plot& plot) {
  const std::string text = render(plot);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

}  // namespace nlqm::cli::svg
