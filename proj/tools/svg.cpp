#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "rehypo/errors.hpp"

namespace rehypo::cli {

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

double parse_value(const std::string& field) {
  if (field.empty() || field == "-") return std::numeric_limits<double>::quiet_NaN();
  try {
    std::size_t pos = 0;
    const double v = std::stod(field, &pos);
    if (pos != field.size()) return std::numeric_limits<double>::quiet_NaN();
    return v;
  } catch (const std::exception&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

std::string escape_xml(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '&')
      out += "&amp;";
    else if (c == '<')
      out += "&lt;";
    else if (c == '>')
      out += "&gt;";
    else
      out += c;
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#e377c2"};

}  // namespace

void cmd_plot_svg(const PlotArgs& args) {
  std::ifstream in(args.in);
  if (!in) throw IoError("cannot open '" + args.in + "'");
  std::string line;
  if (!std::getline(in, line)) throw ParseError(args.in + ": empty file");
  const std::vector<std::string> header = split_row(line);

  auto column = [&](const std::string& name) -> int {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end())
      throw ParseError(args.in + ": no column named '" + name + "'");
    return static_cast<int>(it - header.begin());
  };
  const int x_col = column(args.x);
  std::vector<int> y_cols;
  for (const std::string& y : args.ys) y_cols.push_back(column(y));
  const int group_col = args.group.empty() ? -1 : column(args.group);

  std::vector<Series> series;
  auto series_for = [&](const std::string& key) -> Series& {
    for (Series& s : series)
      if (s.label == key) return s;
    series.push_back(Series{key, {}});
    return series.back();
  };

  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> row = split_row(line);
    if (row.size() != header.size())
      throw ParseError(args.in + ": row has " + std::to_string(row.size()) +
                       " fields, header has " + std::to_string(header.size()));
    const double x = parse_value(row[static_cast<std::size_t>(x_col)]);
    for (std::size_t yi = 0; yi < y_cols.size(); ++yi) {
      const double y = parse_value(row[static_cast<std::size_t>(y_cols[yi])]);
      std::string key;
      if (group_col >= 0) {
        key = row[static_cast<std::size_t>(group_col)];
        if (y_cols.size() > 1) key += ":" + args.ys[yi];
      } else {
        key = args.ys[yi];
      }
      if (std::isfinite(x) && std::isfinite(y)) series_for(key).points.push_back({x, y});
    }
  }

  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = x_min, y_max = -x_min;
  for (const Series& s : series)
    for (const auto& [x, y] : s.points) {
      x_min = std::min(x_min, x);
      x_max = std::max(x_max, x);
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  if (!std::isfinite(x_min)) throw ParseError(args.in + ": nothing to plot");
  if (x_min == x_max) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  if (y_min == y_max) {
    y_min -= 0.5;
    y_max += 0.5;
  }
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  const double width = 720, height = 480;
  const double left = 70, right = width - 170, top = 44, bottom = height - 52;
  auto px = [&](double x) { return left + (x - x_min) / (x_max - x_min) * (right - left); };
  auto py = [&](double y) { return bottom - (y - y_min) / (y_max - y_min) * (bottom - top); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  if (!args.title.empty())
    svg << "<text x=\"" << coord((left + right) / 2) << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-size=\"14\">" << escape_xml(args.title) << "</text>\n";

  for (int t = 0; t <= 4; ++t) {
    const double xv = x_min + t * (x_max - x_min) / 4;
    const double yv = y_min + t * (y_max - y_min) / 4;
    svg << "<line x1=\"" << coord(px(xv)) << "\" y1=\"" << coord(top) << "\" x2=\""
        << coord(px(xv)) << "\" y2=\"" << coord(bottom) << "\" stroke=\"#e0e0e0\"/>\n";
    svg << "<line x1=\"" << coord(left) << "\" y1=\"" << coord(py(yv)) << "\" x2=\""
        << coord(right) << "\" y2=\"" << coord(py(yv)) << "\" stroke=\"#e0e0e0\"/>\n";
    svg << "<text x=\"" << coord(px(xv)) << "\" y=\"" << coord(bottom + 16)
        << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
    svg << "<text x=\"" << coord(left - 6) << "\" y=\"" << coord(py(yv) + 4)
        << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
  }
  svg << "<line x1=\"" << coord(left) << "\" y1=\"" << coord(bottom) << "\" x2=\"" << coord(right)
      << "\" y2=\"" << coord(bottom) << "\" stroke=\"#333\"/>\n";
  svg << "<line x1=\"" << coord(left) << "\" y1=\"" << coord(top) << "\" x2=\"" << coord(left)
      << "\" y2=\"" << coord(bottom) << "\" stroke=\"#333\"/>\n";
  svg << "<text x=\"" << coord((left + right) / 2) << "\" y=\"" << coord(height - 14)
      << "\" text-anchor=\"middle\">" << escape_xml(args.x) << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    const char* color = kPalette[si % (sizeof kPalette / sizeof kPalette[0])];
    if (s.points.size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
      for (const auto& [x, y] : s.points) svg << coord(px(x)) << "," << coord(py(y)) << " ";
      svg << "\"/>\n";
    }
    for (const auto& [x, y] : s.points)
      svg << "<circle cx=\"" << coord(px(x)) << "\" cy=\"" << coord(py(y))
          << "\" r=\"2.4\" fill=\"" << color << "\"/>\n";
    const double ly = top + 8 + 16 * static_cast<double>(si);
    svg << "<line x1=\"" << coord(right + 10) << "\" y1=\"" << coord(ly) << "\" x2=\""
        << coord(right + 28) << "\" y2=\"" << coord(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"1.8\"/>\n";
    svg << "<text x=\"" << coord(right + 33) << "\" y=\"" << coord(ly + 4) << "\">"
        << escape_xml(s.label) << "</text>\n";
  }
  svg << "</g>\n</svg>\n";

  if (args.out.empty()) {
    std::cout << svg.str();
    return;
  }
  std::ofstream out(args.out, std::ios::binary);
  if (!out) throw IoError("cannot open '" + args.out + "' for writing");
  out << svg.str();
  if (!out) throw IoError("write to '" + args.out + "' failed");
}

}  // namespace rehypo::cli
