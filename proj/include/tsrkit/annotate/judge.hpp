#pragma once
// Judge stage: preference ranking over the pool's answers on a fixed 1-5
// rubric, best-answer selection, then an optional critique pass that may
// rewrite the selected thought and action. Model outputs are presented to
// the judge in pool order.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsrkit/annotate/provider.hpp"
#include "tsrkit/core/record.hpp"
#include "tsrkit/prompt/parse.hpp"
#include "tsrkit/prompt/templates.hpp"

namespace tsrkit::annotate {

struct JudgeConfig {
  ProviderConfig provider;
  int likert_min = 1;
  int likert_max = 5;
  bool include_image = false;

  friend bool operator==(const JudgeConfig&, const JudgeConfig&) = default;
};

inline void check_judge_config(const JudgeConfig& cfg) {
  check_provider_config(cfg.provider);
  if (cfg.likert_min != 1 || cfg.likert_max != 5)
    throw std::invalid_argument("the rating scale is fixed at [1, 5]");
}

enum class RankingErrorKind { MissingDelimiters, NotAPermutation };

class RankingError : public std::runtime_error {
 public:
  RankingError(RankingErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  RankingErrorKind kind() const { return kind_; }

 private:
  RankingErrorKind kind_;
};

// Raised when the judge stays unusable after its retry; the sample is
// quarantined by the caller.
class JudgeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string render_annotation_prompt(const std::string& instruction_text,
                                            const std::vector<Completion>& completions,
                                            const prompt::TemplateSet& templates) {
  if (completions.size() < 2)
    throw std::invalid_argument("annotation needs at least two completions");
  std::string outputs;
  for (std::size_t i = 0; i < completions.size(); ++i) {
    if (i > 0) outputs += "\n";
    outputs += "The model [" + completions[i].model_id + "] output is:\n";
    outputs += "Thought: " + completions[i].thought + "\n";
    outputs += "Action: " + completions[i].action.name + "\n";
  }
  std::string text = templates.annotation;
  prompt::detail::replace_all(text, "{INSTRUCTION}", instruction_text);
  prompt::detail::replace_all(text, "{MODEL OUTPUTS}", outputs);
  return text;
}

inline std::vector<std::string> parse_ranking(const std::string& text,
                                              const std::vector<std::string>& pool_ids) {
  const auto begin_pos = text.find("<|begin|>");
  if (begin_pos == std::string::npos)
    throw RankingError(RankingErrorKind::MissingDelimiters, "no <|begin|> delimiter");
  const auto payload_start = begin_pos + 9;
  const auto end_pos = text.find("<|end|>", payload_start);
  if (end_pos == std::string::npos)
    throw RankingError(RankingErrorKind::MissingDelimiters, "no <|end|> delimiter");
  const std::string payload = text.substr(payload_start, end_pos - payload_start);

  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= payload.size()) {
    const auto sep = payload.find('>', start);
    parts.push_back(prompt::detail::trim(
        payload.substr(start, sep == std::string::npos ? std::string::npos : sep - start)));
    if (sep == std::string::npos) break;
    start = sep + 1;
  }

  auto folded = [](std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
  };
  std::map<std::string, std::string> lookup;
  for (const auto& id : pool_ids) lookup[folded(id)] = id;

  std::vector<std::string> ranking;
  std::map<std::string, bool> seen;
  for (const auto& part : parts) {
    if (part.empty())
      throw RankingError(RankingErrorKind::NotAPermutation, "empty entry in ranking");
    const auto it = lookup.find(folded(part));
    if (it == lookup.end())
      throw RankingError(RankingErrorKind::NotAPermutation, "unknown model id \"" + part + "\"");
    if (seen[it->second])
      throw RankingError(RankingErrorKind::NotAPermutation, "duplicate model id \"" + part + "\"");
    seen[it->second] = true;
    ranking.push_back(it->second);
  }
  if (ranking.size() != pool_ids.size())
    throw RankingError(RankingErrorKind::NotAPermutation, "ranking does not cover the pool");
  return ranking;
}

// Best-effort per-model score extraction from lines like
// "The model [x] score: 4". Unparseable scores stay absent.
inline std::map<std::string, int> parse_scores(const std::string& text,
                                               const std::vector<std::string>& pool_ids) {
  std::map<std::string, int> scores;
  for (const auto& id : pool_ids) {
    const auto tag_pos = text.find("[" + id + "]");
    if (tag_pos == std::string::npos) continue;
    const auto line_end = text.find('\n', tag_pos);
    const std::string line =
        text.substr(tag_pos, line_end == std::string::npos ? std::string::npos : line_end - tag_pos);
    static const std::regex score_re(R"(score\D{0,10}?([1-5]))", std::regex::icase);
    std::smatch m;
    if (std::regex_search(line, m, score_re)) scores[id] = m[1].str()[0] - '0';
  }
  return scores;
}

inline FeedbackBundle judge(const Sample& sample, const std::vector<Completion>& completions,
                            Provider& judge_provider, const std::string& instruction_text,
                            const prompt::TemplateSet& templates, const JudgeConfig& cfg) {
  check_judge_config(cfg);
  if (completions.size() < 2)
    throw std::invalid_argument("judge needs at least two parsed completions");

  std::vector<std::string> pool_ids;
  for (const auto& c : completions) pool_ids.push_back(c.model_id);

  const std::string annotation = render_annotation_prompt(instruction_text, completions, templates);
  ChatRequest request;
  request.prompt = annotation;
  request.sample_id = sample.id;
  if (cfg.include_image && sample.image_ref) request.image_path = sample.image_ref;

  std::string response;
  std::vector<std::string> ranking;
  for (int attempt = 0; attempt < 2; ++attempt) {
    try {
      response = judge_provider.complete(request).text;
    } catch (const std::exception& e) {
      if (attempt == 1) throw JudgeFailure(std::string("judge call failed: ") + e.what());
      continue;
    }
    try {
      ranking = parse_ranking(response, pool_ids);
      break;
    } catch (const RankingError& e) {
      if (attempt == 1) throw JudgeFailure(std::string("judge ranking unusable: ") + e.what());
      request.prompt = annotation +
                       "\n\nYour previous reply could not be parsed. Answer again and finish with "
                       "the ranking between <|begin|> and <|end|>, listing every model id exactly "
                       "once, separated by '>'.";
    }
  }

  FeedbackBundle bundle;
  bundle.sample_id = sample.id;
  bundle.ranking = ranking;
  bundle.best_model = ranking.front();
  bundle.scores = parse_scores(response, pool_ids);
  const auto best = std::find_if(completions.begin(), completions.end(),
                                 [&](const Completion& c) { return c.model_id == bundle.best_model; });
  bundle.final_thought = best->thought;
  bundle.final_action = best->action;

  if (!bundle.scores.empty()) {
    int max_score = 0;
    for (const auto& [id, s] : bundle.scores) max_score = std::max(max_score, s);
    const auto it = bundle.scores.find(bundle.best_model);
    if (it != bundle.scores.end() && it->second < max_score)
      bundle.flags.push_back("top-ranked model does not hold the top score");
  }
  return bundle;
}

inline std::string render_critique_prompt(const std::string& instruction_text,
                                          const FeedbackBundle& bundle,
                                          const prompt::TemplateSet& templates) {
  std::string text = templates.critique;
  prompt::detail::replace_all(text, "{INSTRUCTION}", instruction_text);
  prompt::detail::replace_all(text, "{THOUGHT}", bundle.final_thought);
  prompt::detail::replace_all(text, "{ACTION}", bundle.final_action.name);
  return text;
}

namespace detail {

// Critiques come back in plain "Thought: ... / Action: ..." line format.
inline std::optional<std::pair<std::string, std::string>> parse_thought_action(
    const std::string& text) {
  static const std::regex re(R"(Thought:\s*([\s\S]*?)\nAction:\s*([^\n]*))");
  std::smatch m;
  if (!std::regex_search(text, m, re)) return std::nullopt;
  return std::make_pair(prompt::detail::trim(m[1].str()), prompt::detail::trim(m[2].str()));
}

}  // namespace detail

inline FeedbackBundle critique_and_merge(const Sample& sample, FeedbackBundle bundle,
                                         Provider& judge_provider,
                                         const std::string& instruction_text,
                                         const prompt::TemplateSet& templates,
                                         const JudgeConfig& cfg) {
  check_judge_config(cfg);
  ChatRequest request;
  request.prompt = render_critique_prompt(instruction_text, bundle, templates);
  request.sample_id = sample.id;
  if (cfg.include_image && sample.image_ref) request.image_path = sample.image_ref;

  std::string response;
  try {
    response = judge_provider.complete(request).text;
  } catch (const std::exception&) {
    // No critique is a valid outcome; the ranked answer stands.
    bundle.critique_applied = false;
    return bundle;
  }

  const std::string trimmed = prompt::detail::trim(response);
  if (trimmed == "**None**") {
    bundle.critique_applied = false;
    return bundle;
  }

  const auto parsed = detail::parse_thought_action(response);
  if (!parsed) {
    bundle.critique = response;
    bundle.critique_applied = false;
    return bundle;
  }
  try {
    const auto action = prompt::normalize_action(parsed->second, sample.segment.arity());
    bundle.final_thought = parsed->first;
    bundle.final_action = action;
    bundle.critique = response;
    bundle.critique_applied = true;
  } catch (const prompt::UnknownCategory&) {
    bundle.critique = response;
    bundle.critique_applied = false;
  }
  return bundle;
}

}  // namespace tsrkit::annotate
