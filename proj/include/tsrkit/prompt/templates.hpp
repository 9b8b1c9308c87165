#pragma once
// Instruction rendering. Templates are plain text with named placeholders
// ({DOMAIN}, {ANOMALY LABEL}, {OBSERVATION}, {CATEGORY LIST}, {FEW SHOTS});
// the shipped defaults are embedded and can be overridden from a directory
// of template files plus one exemplar file per category.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsrkit/core/record.hpp"
#include "tsrkit/core/taxonomy.hpp"
#include "tsrkit/prompt/builtin_data.hpp"
#include "tsrkit/prompt/serialize.hpp"

namespace tsrkit::prompt {

struct Exemplar {
  Arity arity = Arity::Univariate;
  std::string category;
  std::string text;

  friend bool operator==(const Exemplar&, const Exemplar&) = default;
};

struct TemplateSet {
  std::string instruction_univariate;
  std::string instruction_multivariate;
  std::string annotation;
  std::string critique;
  std::vector<Exemplar> exemplars;

  friend bool operator==(const TemplateSet&, const TemplateSet&) = default;

  const std::string& instruction(Arity arity) const {
    return arity == Arity::Univariate ? instruction_univariate : instruction_multivariate;
  }

  std::vector<Exemplar> exemplars_for(Arity arity) const {
    std::vector<Exemplar> out;
    for (const auto& e : exemplars)
      if (e.arity == arity) out.push_back(e);
    return out;
  }

  static const TemplateSet& builtin();
  static TemplateSet load(const std::filesystem::path& dir);
};

struct PromptBundle {
  std::string sample_id;
  std::string text;
  Arity mode = Arity::Univariate;
  bool includes_image = false;
};

namespace detail {

inline void replace_all(std::string& text, std::string_view placeholder, std::string_view value) {
  std::size_t pos = 0;
  while ((pos = text.find(placeholder, pos)) != std::string::npos) {
    text.replace(pos, placeholder.size(), value);
    pos += value.size();
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read template file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

inline std::string slug(const std::string& name) {
  std::string out;
  for (char c : name) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    else if (!out.empty() && out.back() != '_')
      out.push_back('_');
  }
  while (!out.empty() && out.back() == '_') out.pop_back();
  return out;
}

}  // namespace detail

inline const TemplateSet& TemplateSet::builtin() {
  static const TemplateSet set = [] {
    TemplateSet s;
    s.instruction_univariate = builtin_data::kInstructionUnivariate;
    s.instruction_multivariate = builtin_data::kInstructionMultivariate;
    s.annotation = builtin_data::kAnnotation;
    s.critique = builtin_data::kCritique;
    for (const auto& e : builtin_data::kExemplars) {
      s.exemplars.push_back({e.multivariate ? Arity::Multivariate : Arity::Univariate,
                             e.category, e.text});
    }
    return s;
  }();
  return set;
}

inline TemplateSet TemplateSet::load(const std::filesystem::path& dir) {
  TemplateSet s;
  s.instruction_univariate = detail::read_file(dir / "instruction_univariate.txt");
  s.instruction_multivariate = detail::read_file(dir / "instruction_multivariate.txt");
  s.annotation = detail::read_file(dir / "annotation.txt");
  s.critique = detail::read_file(dir / "critique.txt");
  for (Arity arity : {Arity::Univariate, Arity::Multivariate}) {
    const auto sub = dir / "exemplars" / to_string(arity);
    for (const auto& cat : catalog(arity)) {
      char prefix[8];
      std::snprintf(prefix, sizeof(prefix), "%02d_", cat.id);
      const auto path = sub / (prefix + detail::slug(cat.name) + ".txt");
      s.exemplars.push_back({arity, cat.name, detail::read_file(path)});
    }
  }
  return s;
}

// Numbered category list with the one-line definitions, as referenced by the
// instruction preamble.
inline std::string category_list_text(Arity arity) {
  std::string out;
  for (const auto& cat : catalog(arity)) {
    out += std::to_string(cat.id) + ". " + cat.name + ": " + cat.definition + "\n";
  }
  if (!out.empty()) out.pop_back();
  return out;
}

inline std::string exemplar_block(const std::vector<Exemplar>& exemplars) {
  std::string out;
  for (std::size_t i = 0; i < exemplars.size(); ++i) {
    if (i > 0) out += "\n\n";
    out += exemplars[i].text;
  }
  return out;
}

inline PromptBundle render_instruction(const Sample& sample, const std::vector<Exemplar>& few_shots,
                                       const TemplateSet& templates = TemplateSet::builtin()) {
  check_segment(sample.segment);
  const Arity arity = sample.segment.arity();
  for (const auto& shot : few_shots) {
    if (shot.arity != arity)
      throw std::invalid_argument("few-shot exemplar \"" + shot.category +
                                  "\" does not match the sample's arity");
  }

  std::string text = templates.instruction(arity);
  detail::replace_all(text, "{CATEGORY LIST}", category_list_text(arity));
  detail::replace_all(text, "{FEW SHOTS}", exemplar_block(few_shots));
  detail::replace_all(text, "{ANOMALY LABEL}", sample.is_anomaly ? "anomalous" : "normal");
  detail::replace_all(text, "{DOMAIN}", sample.domain);
  detail::replace_all(text, "{OBSERVATION}", serialize_observation(sample.segment));

  PromptBundle bundle;
  bundle.sample_id = sample.id;
  bundle.text = std::move(text);
  bundle.mode = arity;
  bundle.includes_image = sample.image_ref.has_value();
  return bundle;
}

}  // namespace tsrkit::prompt
