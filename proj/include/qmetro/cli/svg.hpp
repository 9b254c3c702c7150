// Copyright 2026 the qmetro authors
//
// SPDX-License-Identifier: Apache-2.0
//
// Self-contained SVG line charts for sweep results: axes with tick labels,
// one polyline per value column, optional markers on the local maxima of the
// first series, and a legend. No external renderer dependencies.

#ifndef QMETRO_CLI_SVG_HPP_
#define QMETRO_CLI_SVG_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "qmetro/cli/sweep.hpp"
#include "qmetro/errors.hpp"

namespace qmetro::cli {

enum class FigureStyle { lines, lines_with_peak_markers };

namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace detail

inline std::string svg_string(const SweepResult& result,
                              FigureStyle style = FigureStyle::lines) {
  if (result.rows.empty())
    throw Error("svg_string: result has no rows to plot");
  constexpr double kW = 900, kH = 560;
  constexpr double kL = 80, kR = 160, kT = 30, kB = 60;
  const double plot_w = kW - kL - kR, plot_h = kH - kT - kB;

  double x_min = result.rows.front().coord, x_max = x_min;
  double y_min = 0.0, y_max = 0.0;
  bool any = false;
  for (const auto& row : result.rows) {
    x_min = std::min(x_min, row.coord);
    x_max = std::max(x_max, row.coord);
    for (const auto& v : row.values)
      if (v && std::isfinite(*v)) {
        if (!any) {
          y_min = y_max = *v;
          any = true;
        }
        y_min = std::min(y_min, *v);
        y_max = std::max(y_max, *v);
      }
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (!any || y_max == y_min) y_max = y_min + 1.0;
  y_min = std::min(y_min, 0.0);

  auto px = [&](double x) { return kL + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) {
    return kT + plot_h - (y - y_min) / (y_max - y_min) * plot_h;
  };

  static const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                   "#9467bd", "#7f7f7f", "#ff7f0e"};
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
       detail::svg_num(kW) + "\" height=\"" + detail::svg_num(kH) +
       "\" viewBox=\"0 0 " + detail::svg_num(kW) + " " + detail::svg_num(kH) +
       "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // Axes and ticks.
  s += "<g stroke=\"black\" stroke-width=\"1\">\n";
  s += "<line x1=\"" + detail::svg_num(kL) + "\" y1=\"" +
       detail::svg_num(kT + plot_h) + "\" x2=\"" + detail::svg_num(kL + plot_w) +
       "\" y2=\"" + detail::svg_num(kT + plot_h) + "\"/>\n";
  s += "<line x1=\"" + detail::svg_num(kL) + "\" y1=\"" + detail::svg_num(kT) +
       "\" x2=\"" + detail::svg_num(kL) + "\" y2=\"" +
       detail::svg_num(kT + plot_h) + "\"/>\n";
  s += "</g>\n";
  s += "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = x_min + (x_max - x_min) * i / 5.0;
    const double yv = y_min + (y_max - y_min) * i / 5.0;
    s += "<line stroke=\"black\" x1=\"" + detail::svg_num(px(xv)) + "\" y1=\"" +
         detail::svg_num(kT + plot_h) + "\" x2=\"" + detail::svg_num(px(xv)) +
         "\" y2=\"" + detail::svg_num(kT + plot_h + 5) + "\"/>\n";
    s += "<text text-anchor=\"middle\" x=\"" + detail::svg_num(px(xv)) +
         "\" y=\"" + detail::svg_num(kT + plot_h + 20) + "\">" +
         detail::tick_label(xv) + "</text>\n";
    s += "<line stroke=\"black\" x1=\"" + detail::svg_num(kL - 5) + "\" y1=\"" +
         detail::svg_num(py(yv)) + "\" x2=\"" + detail::svg_num(kL) +
         "\" y2=\"" + detail::svg_num(py(yv)) + "\"/>\n";
    s += "<text text-anchor=\"end\" x=\"" + detail::svg_num(kL - 8) +
         "\" y=\"" + detail::svg_num(py(yv) + 4) + "\">" +
         detail::tick_label(yv) + "</text>\n";
  }
  s += "<text text-anchor=\"middle\" x=\"" + detail::svg_num(kL + plot_w / 2) +
       "\" y=\"" + detail::svg_num(kH - 15) + "\">" + result.axis_name +
       "</text>\n";
  s += "</g>\n";

  // One polyline per column; gaps where values are absent.
  for (size_t c = 0; c < result.columns.size(); ++c) {
    const char* color = kPalette[c % 6];
    std::string points;
    auto flush = [&]() {
      if (!points.empty()) {
        s += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
             "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
        points.clear();
      }
    };
    for (const auto& row : result.rows) {
      const auto& v = row.values[c];
      if (v && std::isfinite(*v)) {
        points += detail::svg_num(px(row.coord)) + "," +
                  detail::svg_num(py(*v)) + " ";
      } else {
        flush();
      }
    }
    flush();
    // Legend entry.
    const double ly = kT + 20 + 18.0 * c;
    s += "<line stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" x1=\"" +
         detail::svg_num(kL + plot_w + 10) + "\" y1=\"" + detail::svg_num(ly) +
         "\" x2=\"" + detail::svg_num(kL + plot_w + 35) + "\" y2=\"" +
         detail::svg_num(ly) + "\"/>\n";
    s += "<text font-family=\"sans-serif\" font-size=\"12\" x=\"" +
         detail::svg_num(kL + plot_w + 40) + "\" y=\"" + detail::svg_num(ly + 4) +
         "\">" + result.columns[c] + "</text>\n";
  }

  if (style == FigureStyle::lines_with_peak_markers &&
      !result.columns.empty()) {
    for (size_t i = 1; i + 1 < result.rows.size(); ++i) {
      const auto& prev = result.rows[i - 1].values[0];
      const auto& cur = result.rows[i].values[0];
      const auto& next = result.rows[i + 1].values[0];
      if (prev && cur && next && *cur > *prev && *cur >= *next) {
        s += "<circle fill=\"none\" stroke=\"black\" r=\"4\" cx=\"" +
             detail::svg_num(px(result.rows[i].coord)) + "\" cy=\"" +
             detail::svg_num(py(*cur)) + "\"/>\n";
      }
    }
  }

  s += "</svg>\n";
  return s;
}

inline void emit_figure(const SweepResult& result, const std::string& path,
                        FigureStyle style = FigureStyle::lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << svg_string(result, style);
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace qmetro::cli

#endif  // QMETRO_CLI_SVG_HPP_
