#pragma once
// Deterministic SVG line charts: fixed 800x300 canvas, one polyline per
// channel, a legend entry per channel. No timestamps or randomness, so the
// same sample always renders to identical bytes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "tsrkit/core/record.hpp"

namespace tsrkit::cli {

inline constexpr int kChartWidth = 800;
inline constexpr int kChartHeight = 300;

namespace detail {

inline const char* channel_color(std::size_t index) {
  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return palette[index % (sizeof(palette) / sizeof(palette[0]))];
}

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace detail

inline std::string render_chart_svg(const Sample& sample) {
  check_segment(sample.segment);
  const auto& seg = sample.segment;
  const std::size_t n = seg.length();

  double lo = seg.channels[0].values[0], hi = lo;
  for (const auto& ch : seg.channels) {
    for (double v : ch.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (hi - lo < 1e-12) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double margin = 0.05 * (hi - lo);
  lo -= margin;
  hi += margin;

  const double plot_left = 50, plot_right = kChartWidth - 10;
  const double plot_top = 30, plot_bottom = kChartHeight - 25;
  auto x_of = [&](std::size_t t) {
    return plot_left + (plot_right - plot_left) * static_cast<double>(t) /
                           static_cast<double>(std::max<std::size_t>(1, n - 1));
  };
  auto y_of = [&](double v) { return plot_bottom - (plot_bottom - plot_top) * (v - lo) / (hi - lo); };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(kChartWidth) +
         "\" height=\"" + std::to_string(kChartHeight) + "\" viewBox=\"0 0 " +
         std::to_string(kChartWidth) + " " + std::to_string(kChartHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"10\" y=\"18\" font-family=\"sans-serif\" font-size=\"12\">" + sample.id + " (" +
         sample.domain + ")</text>\n";
  // axes
  svg += "<line x1=\"" + detail::svg_num(plot_left) + "\" y1=\"" + detail::svg_num(plot_top) +
         "\" x2=\"" + detail::svg_num(plot_left) + "\" y2=\"" + detail::svg_num(plot_bottom) +
         "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + detail::svg_num(plot_left) + "\" y1=\"" + detail::svg_num(plot_bottom) +
         "\" x2=\"" + detail::svg_num(plot_right) + "\" y2=\"" + detail::svg_num(plot_bottom) +
         "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
  svg += "<text x=\"5\" y=\"" + detail::svg_num(plot_top + 4) +
         "\" font-family=\"sans-serif\" font-size=\"10\">" + detail::svg_num(hi) + "</text>\n";
  svg += "<text x=\"5\" y=\"" + detail::svg_num(plot_bottom) +
         "\" font-family=\"sans-serif\" font-size=\"10\">" + detail::svg_num(lo) + "</text>\n";

  for (std::size_t c = 0; c < seg.channels.size(); ++c) {
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += detail::channel_color(c);
    svg += "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t t = 0; t < n; ++t) {
      if (t > 0) svg += " ";
      svg += detail::svg_num(x_of(t)) + "," + detail::svg_num(y_of(seg.channels[c].values[t]));
    }
    svg += "\"/>\n";
  }

  // legend, one row per channel
  for (std::size_t c = 0; c < seg.channels.size(); ++c) {
    const double ly = plot_top + 14.0 * static_cast<double>(c);
    svg += "<rect x=\"" + detail::svg_num(plot_right - 110) + "\" y=\"" + detail::svg_num(ly - 8) +
           "\" width=\"10\" height=\"10\" fill=\"" + detail::channel_color(c) + "\"/>\n";
    svg += "<text x=\"" + detail::svg_num(plot_right - 96) + "\" y=\"" + detail::svg_num(ly + 1) +
           "\" font-family=\"sans-serif\" font-size=\"11\" class=\"legend\">" +
           seg.channels[c].name + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

// Writes the chart and returns the path recorded on the sample.
inline std::string render_chart(const Sample& sample, const std::filesystem::path& images_dir) {
  std::filesystem::create_directories(images_dir);
  const auto path = images_dir / (sample.id + ".svg");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write chart: " + path.string());
  out << render_chart_svg(sample);
  if (!out) throw std::runtime_error("chart write failed: " + path.string());
  return path.string();
}

}  // namespace tsrkit::cli
