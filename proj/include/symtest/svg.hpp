// Copyright 2026 The symtest developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.
//
// Minimal self-contained SVG rendering of the error-decay curves: log-scale
// type-II error against the query count, one polyline per symmetry.

#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "symtest/errors.hpp"

namespace symtest {

struct CurveSeries {
  std::string name;
  std::string color;
  std::vector<double> values;  // beta at n = 1..n_max
};

inline std::string render_curve_svg(const std::vector<CurveSeries>& series, int n_max) {
  if (series.empty() || n_max < 1) throw RangeError("nothing to plot");

  const double width = 640, height = 420;
  const double left = 70, right = 20, top = 30, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double log_min = 0.0;
  for (const auto& s : series)
    for (double v : s.values) log_min = std::min(log_min, std::log10(v));
  const int floor_exp = static_cast<int>(std::floor(log_min));
  const double log_span = 0.0 - floor_exp;

  auto x_of = [&](double n) {
    return left + plot_w * (n_max > 1 ? (n - 1.0) / (n_max - 1.0) : 0.5);
  };
  auto y_of = [&](double v) {
    return top + plot_h * (0.0 - std::log10(v)) / (log_span > 0 ? log_span : 1.0);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"18\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"14\">Optimal type-II error vs queries</text>\n";

  // axes
  svg << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n";

  for (int e = 0; e >= floor_exp; --e) {
    const double y = y_of(std::pow(10.0, e));
    svg << "<line x1=\"" << left - 4 << "\" y1=\"" << y << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << e
        << "</text>\n";
  }
  const int x_step = std::max(1, n_max / 10);
  for (int n = 1; n <= n_max; n += x_step) {
    const double x = x_of(n);
    svg << "<line x1=\"" << x << "\" y1=\"" << top + plot_h << "\" x2=\"" << x << "\" y2=\""
        << top + plot_h + 4 << "\" stroke=\"black\"/>\n";
    svg << "<text x=\"" << x << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << n
        << "</text>\n";
  }
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">queries n</text>\n";

  double legend_y = top + 12;
  for (const auto& s : series) {
    svg << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (int n = 1; n <= n_max; ++n)
      svg << x_of(n) << "," << y_of(s.values[static_cast<size_t>(n - 1)]) << " ";
    svg << "\"/>\n";
    svg << "<line x1=\"" << left + plot_w - 130 << "\" y1=\"" << legend_y << "\" x2=\""
        << left + plot_w - 110 << "\" y2=\"" << legend_y << "\" stroke=\"" << s.color
        << "\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << left + plot_w - 104 << "\" y=\"" << legend_y + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.name << "</text>\n";
    legend_y += 18;
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace symtest
