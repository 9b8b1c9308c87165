#pragma once
// Line-delimited record I/O. One JSON object per line, UTF-8, stable field
// order: id, domain, channels, length, anomaly_window, is_anomaly, category,
// thought, image_ref, context, provenance. This file format is the contract
// between pipeline stages.

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsrkit/core/record.hpp"

namespace tsrkit {

using ordered_json = nlohmann::ordered_json;

class RecordParseError : public std::runtime_error {
 public:
  RecordParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

inline ordered_json to_json(const DatasetRecord& rec) {
  const Sample& s = rec.sample;
  ordered_json j;
  j["id"] = s.id;
  j["domain"] = s.domain;
  ordered_json channels = ordered_json::object();
  for (const auto& ch : s.segment.channels) channels[ch.name] = ch.values;
  j["channels"] = std::move(channels);
  j["length"] = s.segment.length();
  if (s.segment.anomaly_window) {
    j["anomaly_window"] = {s.segment.anomaly_window->begin, s.segment.anomaly_window->end};
  } else {
    j["anomaly_window"] = nullptr;
  }
  j["is_anomaly"] = s.is_anomaly;
  if (rec.final_action) {
    j["category"] = rec.final_action->name;
  } else {
    j["category"] = nullptr;
  }
  j["thought"] = rec.final_thought;
  j["image_ref"] = s.image_ref ? ordered_json(*s.image_ref) : ordered_json(nullptr);
  j["context"] = s.context;
  if (rec.provenance) {
    j["provenance"] = {{"ranking", rec.provenance->ranking},
                       {"critique_applied", rec.provenance->critique_applied}};
  } else {
    j["provenance"] = nullptr;
  }
  return j;
}

inline DatasetRecord record_from_json(const ordered_json& j) {
  DatasetRecord rec;
  Sample& s = rec.sample;
  s.id = j.at("id").get<std::string>();
  s.domain = j.at("domain").get<std::string>();
  for (const auto& [name, values] : j.at("channels").items()) {
    s.segment.channels.push_back({name, values.get<std::vector<double>>()});
  }
  const auto declared = j.at("length").get<std::size_t>();
  if (declared != s.segment.length())
    throw std::invalid_argument("declared length does not match channel data");
  if (!j.at("anomaly_window").is_null()) {
    const auto& w = j.at("anomaly_window");
    s.segment.anomaly_window = IndexRange{w.at(0).get<std::size_t>(), w.at(1).get<std::size_t>()};
  }
  s.is_anomaly = j.at("is_anomaly").get<bool>();
  if (!j.at("category").is_null()) {
    const auto name = j.at("category").get<std::string>();
    auto cat = find_category(name, s.segment.arity());
    if (!cat) throw std::invalid_argument("unknown category name: " + name);
    rec.final_action = *cat;
    s.gold_category = *cat;
  }
  rec.final_thought = j.at("thought").get<std::string>();
  if (!j.at("image_ref").is_null()) s.image_ref = j.at("image_ref").get<std::string>();
  s.context = j.at("context").get<std::string>();
  if (!j.at("provenance").is_null()) {
    const auto& p = j.at("provenance");
    Provenance prov;
    prov.ranking = p.at("ranking").get<std::vector<std::string>>();
    prov.critique_applied = p.at("critique_applied").get<bool>();
    rec.provenance = std::move(prov);
  }
  return rec;
}

inline ordered_json to_json(const Completion& c) {
  ordered_json j;
  j["sample_id"] = c.sample_id;
  j["model_id"] = c.model_id;
  j["thought"] = c.thought;
  j["action"] = c.action.name;
  j["arity"] = to_string(c.action.arity);
  j["raw_response"] = c.raw_response;
  j["latency_ms"] = c.latency_ms;
  return j;
}

inline Completion completion_from_json(const ordered_json& j) {
  Completion c;
  c.sample_id = j.at("sample_id").get<std::string>();
  c.model_id = j.at("model_id").get<std::string>();
  c.thought = j.at("thought").get<std::string>();
  const Arity arity =
      j.at("arity").get<std::string>() == "multivariate" ? Arity::Multivariate : Arity::Univariate;
  const auto name = j.at("action").get<std::string>();
  auto cat = find_category(name, arity);
  if (!cat) throw std::invalid_argument("unknown action name: " + name);
  c.action = *cat;
  c.raw_response = j.at("raw_response").get<std::string>();
  c.latency_ms = j.at("latency_ms").get<std::uint64_t>();
  return c;
}

namespace detail {

template <typename T, typename FromJson>
std::vector<T> read_jsonl(const std::string& path, FromJson&& from_json_fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::vector<T> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      out.push_back(from_json_fn(ordered_json::parse(line)));
    } catch (const std::exception& e) {
      throw RecordParseError(line_no, e.what());
    }
  }
  return out;
}

template <typename T, typename ToJson>
void write_jsonl(const std::vector<T>& items, const std::string& path, ToJson&& to_json_fn) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  for (const auto& item : items) out << to_json_fn(item).dump() << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace detail

inline std::vector<DatasetRecord> read_records(const std::string& path) {
  return detail::read_jsonl<DatasetRecord>(path, [](const ordered_json& j) { return record_from_json(j); });
}

inline void write_records(const std::vector<DatasetRecord>& records, const std::string& path) {
  detail::write_jsonl(records, path, [](const DatasetRecord& r) { return to_json(r); });
}

inline std::vector<Completion> read_completions(const std::string& path) {
  return detail::read_jsonl<Completion>(path,
                                        [](const ordered_json& j) { return completion_from_json(j); });
}

inline void write_completions(const std::vector<Completion>& completions, const std::string& path) {
  detail::write_jsonl(completions, path, [](const Completion& c) { return to_json(c); });
}

}  // namespace tsrkit
