#pragma once

// CSV and SVG output for scans and dissociation curves.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dissoc/errors.hpp"
#include "dissoc/solver1d.hpp"
#include "dissoc/solver3d.hpp"

namespace dissoc::report {

/// 17 significant digits: enough for an exact round trip of any double.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

inline void write_csv(std::ostream& os, const CsvTable& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
}

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  return out;
}

inline CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw DomainError("empty CSV input");
  t.header = split_fields(line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != t.header.size()) throw DomainError("CSV row has " + std::to_string(fields.size()) + " fields");
    std::vector<double> row;
    for (const auto& f : fields) {
      char* end = nullptr;
      const double v = std::strtod(f.c_str(), &end);
      if (end == f.c_str() || *end != '\0') throw DomainError("CSV field is not a number: " + f);
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline CsvTable scan_table(const SplittingScan& scan) {
  CsvTable t{{"alpha", "I_alpha", "I_complement", "sum"}, {}};
  for (const auto& s : scan.samples) t.rows.push_back({s.alpha, s.energy, s.complement_energy, s.sum});
  return t;
}

inline std::vector<SplittingSample> scan_samples(const CsvTable& t) {
  if (t.header != std::vector<std::string>{"alpha", "I_alpha", "I_complement", "sum"})
    throw DomainError("not a splitting scan table");
  std::vector<SplittingSample> out;
  for (const auto& r : t.rows) out.push_back({r[0], r[1], r[2], r[3]});
  return out;
}

inline CsvTable dissociation_table(const std::vector<DissociationPoint>& curve, double asymptote) {
  CsvTable t{{"R", "energy", "gap_to_asymptote"}, {}};
  for (const auto& p : curve) t.rows.push_back({p.distance, p.energy, p.energy - asymptote});
  return t;
}

inline CsvTable probe_table(const ThresholdBracket& b) {
  CsvTable t{{"c_xc", "argmin_alpha", "symmetric"}, {}};
  for (const auto& p : b.probes) t.rows.push_back({p.c_xc, p.argmin_alpha, p.symmetric ? 1.0 : 0.0});
  return t;
}

/// Minimal single-series line plot.
inline std::string svg_line_plot(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& title,
                                 const std::string& x_label, const std::string& y_label) {
  if (xs.size() != ys.size() || xs.empty()) throw DomainError("plot needs matching, nonempty series");
  constexpr double width = 640, height = 420, left = 80, right = 20, top = 40, bottom = 60;
  auto [x_lo, x_hi] = std::minmax_element(xs.begin(), xs.end());
  auto [y_lo, y_hi] = std::minmax_element(ys.begin(), ys.end());
  double x0 = *x_lo, x1 = *x_hi, y0 = *y_lo, y1 = *y_hi;
  if (x1 == x0) x1 = x0 + 1.0;
  if (y1 == y0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (width - left - right); };
  auto py = [&](double y) { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title << "</text>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << height - bottom << "\" x2=\"" << width - right << "\" y2=\""
     << height - bottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << height - bottom
     << "\" stroke=\"black\"/>\n";
  char buf[64];
  for (int k = 0; k <= 4; ++k) {
    const double x = x0 + (x1 - x0) * k / 4.0, y = y0 + (y1 - y0) * k / 4.0;
    std::snprintf(buf, sizeof buf, "%.4g", x);
    os << "<text x=\"" << px(x) << "\" y=\"" << height - bottom + 18 << "\" text-anchor=\"middle\" font-size=\"11\">"
       << buf << "</text>\n";
    std::snprintf(buf, sizeof buf, "%.5g", y);
    os << "<text x=\"" << left - 6 << "\" y=\"" << py(y) + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << buf
       << "</text>\n";
  }
  os << "<text x=\"" << width / 2 << "\" y=\"" << height - 16 << "\" text-anchor=\"middle\" font-size=\"13\">"
     << x_label << "</text>\n";
  os << "<text x=\"18\" y=\"" << height / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
     << height / 2 << ")\">" << y_label << "</text>\n";
  os << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? " " : "") << px(xs[i]) << ',' << py(ys[i]);
  os << "\"/>\n";
  for (std::size_t i = 0; i < xs.size(); ++i)
    os << "<circle cx=\"" << px(xs[i]) << "\" cy=\"" << py(ys[i]) << "\" r=\"3\" fill=\"steelblue\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace dissoc::report
