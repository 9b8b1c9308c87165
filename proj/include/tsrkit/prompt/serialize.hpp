#pragma once
// Observation text rendering. Values are rounded half-even to two decimal
// places and printed with minimal digits (0.0, not 0.00) so the same segment
// always produces the same prompt bytes.

#include <cstdio>
#include <stdexcept>
#include <string>

#include "tsrkit/core/segment.hpp"

namespace tsrkit::prompt {

inline std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);  // exact half-even decimal rounding
  std::string s(buf);
  if (s.back() == '0') s.pop_back();
  if (s == "-0.0") s = "0.0";
  return s;
}

inline std::string serialize_observation(const TimeSeriesSegment& seg) {
  check_segment(seg);
  if (seg.length() == 0) throw std::invalid_argument("cannot serialize an empty channel");

  auto join_values = [](const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) out += ", ";
      out += format_value(values[i]);
    }
    return out;
  };

  if (seg.univariate()) return join_values(seg.channels[0].values);

  std::string out;
  for (std::size_t c = 0; c < seg.channels.size(); ++c) {
    if (c > 0) out += "; ";
    out += '"' + seg.channels[c].name + "\": [" + join_values(seg.channels[c].values) + ']';
  }
  return out;
}

}  // namespace tsrkit::prompt
