#pragma once
// Ingestion of delimited numeric tables (one column per channel, optional
// 0/1 label column). The stream splits into consecutive segments whose
// lengths are drawn uniformly from the configured range; the concatenation
// of all segments covers every row in order.

#include <cctype>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsrkit/cli/config.hpp"
#include "tsrkit/core/record.hpp"
#include "tsrkit/synth/base.hpp"

namespace tsrkit::cli {

struct IngestOptions {
  std::string domain;
  std::string context;
  RangeConfig lengths{16, 128};
  std::uint64_t seed = 1;
  std::optional<std::string> label_column;  // auto-detected by header name when unset
  char delimiter = ',';
  std::string id_prefix;  // defaults to a slug of the domain
};

namespace detail {

inline std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, delim)) cells.push_back(cell);
  if (!line.empty() && line.back() == delim) cells.push_back("");
  return cells;
}

inline std::string trim_cell(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline bool parse_number(const std::string& cell, double& out) {
  const std::string t = trim_cell(cell);
  if (t.empty()) return false;
  std::size_t used = 0;
  try {
    out = std::stod(t, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == t.size();
}

inline std::string slug(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    else if (!out.empty() && out.back() != '-')
      out.push_back('-');
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out.empty() ? "ingest" : out;
}

inline bool is_label_header(const std::string& name) {
  const std::string t = slug(name);
  return t == "label" || t == "is-anomaly" || t == "anomaly";
}

}  // namespace detail

inline std::vector<Sample> ingest(const std::string& path, const IngestOptions& opts) {
  if (opts.domain.empty()) throw std::invalid_argument("ingest requires a non-empty domain");
  if (opts.lengths.min < kMinSegmentLength || opts.lengths.max > kMaxSegmentLength ||
      opts.lengths.min > opts.lengths.max)
    throw std::invalid_argument("ingest length range outside segment bounds");

  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input table: " + path);

  std::string line;
  std::vector<std::string> headers;
  std::vector<std::vector<double>> columns;
  std::vector<bool> labels;
  std::optional<std::size_t> label_col;
  std::size_t line_no = 0;
  bool saw_data = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim_cell(line).empty()) continue;
    const auto cells = detail::split_line(line, opts.delimiter);

    if (!saw_data && headers.empty()) {
      // A first row with any non-numeric cell is a header.
      double tmp;
      bool all_numeric = true;
      for (const auto& c : cells)
        if (!detail::parse_number(c, tmp)) all_numeric = false;
      if (!all_numeric) {
        for (const auto& c : cells) headers.push_back(detail::trim_cell(c));
        for (std::size_t i = 0; i < headers.size(); ++i) {
          if (opts.label_column ? headers[i] == *opts.label_column
                                : detail::is_label_header(headers[i]))
            label_col = i;
        }
        columns.resize(headers.size() - (label_col ? 1 : 0));
        continue;
      }
    }
    if (columns.empty()) columns.resize(cells.size());

    const std::size_t expected = columns.size() + (label_col ? 1 : 0);
    if (cells.size() != expected)
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(expected) + " cells, got " +
                               std::to_string(cells.size()));
    std::size_t col = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      double v = 0.0;
      if (!detail::parse_number(cells[i], v))
        throw std::runtime_error(path + ":" + std::to_string(line_no) + ": non-numeric cell \"" +
                                 detail::trim_cell(cells[i]) + "\"");
      if (label_col && i == *label_col) {
        labels.push_back(v > 0.0);
      } else {
        columns[col++].push_back(v);
      }
    }
    saw_data = true;
  }

  const std::size_t rows = columns.empty() ? 0 : columns[0].size();
  if (rows < kMinSegmentLength)
    throw std::runtime_error("input has " + std::to_string(rows) + " rows; at least " +
                             std::to_string(kMinSegmentLength) + " required");
  if (columns.size() > kMaxChannels)
    throw std::runtime_error("input has more than " + std::to_string(kMaxChannels) + " channels");

  // Draw segment lengths until the remainder is too short, then fold the
  // remainder into the final segment (splitting once if that overflows).
  std::mt19937_64 rng(synth::detail::mix_seed(opts.seed, 0xC511));
  std::uniform_int_distribution<std::size_t> pick(opts.lengths.min, opts.lengths.max);
  std::vector<std::size_t> cuts;
  std::size_t used = 0;
  while (rows - used >= opts.lengths.min) {
    std::size_t len = std::min(pick(rng), rows - used);
    if (rows - used - len < opts.lengths.min && rows - used - len > 0) {
      // Remainder would be too short: absorb it, or split evenly if needed.
      const std::size_t rest = rows - used;
      if (rest <= opts.lengths.max) {
        len = rest;
      } else {
        len = rest / 2;
      }
    }
    cuts.push_back(len);
    used += len;
  }

  const std::string prefix = opts.id_prefix.empty() ? detail::slug(opts.domain) : opts.id_prefix;
  std::vector<Sample> samples;
  std::size_t offset = 0;
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    Sample s;
    char idbuf[32];
    std::snprintf(idbuf, sizeof(idbuf), "-%06zu", k);
    s.id = prefix + idbuf;
    s.domain = opts.domain;
    s.context = opts.context;
    for (std::size_t c = 0; c < columns.size(); ++c) {
      Channel ch;
      ch.name = !headers.empty() && headers.size() > c
                    ? (label_col && c >= *label_col ? headers[c + 1] : headers[c])
                    : (columns.size() == 1 ? "value" : "ch" + std::to_string(c + 1));
      ch.values.assign(columns[c].begin() + static_cast<std::ptrdiff_t>(offset),
                       columns[c].begin() + static_cast<std::ptrdiff_t>(offset + cuts[k]));
      s.segment.channels.push_back(std::move(ch));
    }
    s.segment.seed = opts.seed + k;
    if (!labels.empty()) {
      bool any = false;
      for (std::size_t t = offset; t < offset + cuts[k]; ++t) any = any || labels[t];
      s.is_anomaly = any;
      // Category is left unset for ingested data; the judge stage assigns it.
    }
    offset += cuts[k];
    samples.push_back(std::move(s));
  }
  return samples;
}

}  // namespace tsrkit::cli
