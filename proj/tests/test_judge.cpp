#include <deque>

#include <catch_amalgamated.hpp>

#include "tsrkit/annotate/judge.hpp"
#include "tsrkit/annotate/mock.hpp"

using namespace tsrkit;
using namespace tsrkit::annotate;

namespace {

// Provider that replays a fixed script of responses.
class ScriptedProvider final : public Provider {
 public:
  explicit ScriptedProvider(std::vector<std::string> script)
      : id_("scripted"), script_(script.begin(), script.end()) {}
  const std::string& model_id() const override { return id_; }
  ChatResponse complete(const ChatRequest&) override {
    if (script_.empty()) throw ProviderError("script exhausted");
    ChatResponse res{script_.front(), 1};
    script_.pop_front();
    return res;
  }

 private:
  std::string id_;
  std::deque<std::string> script_;
};

Sample sample() {
  Sample s;
  s.id = "judge-1";
  s.domain = "Finance-Trades";
  s.context = "minutely volume";
  std::vector<double> values;
  for (int t = 0; t < 24; ++t) values.push_back(1.0 + 0.05 * (t % 3));
  s.segment.channels.push_back({"value", values});
  s.is_anomaly = true;
  return s;
}

Completion completion(const std::string& model, int category_id) {
  Completion c;
  c.sample_id = "judge-1";
  c.model_id = model;
  c.thought = "thought from " + model;
  c.action = category_by_id(category_id, Arity::Univariate);
  c.raw_response = "raw";
  return c;
}

JudgeConfig judge_config() {
  JudgeConfig cfg;
  cfg.provider.model_id = "judge";
  cfg.provider.endpoint = "mock://local";
  cfg.provider.model_name = "judge";
  return cfg;
}

const std::vector<Completion> kPool = {completion("gpt-4o", 1), completion("gemini", 12),
                                       completion("deepseek-r1", 6), completion("llama-70b", 11)};
const std::vector<std::string> kIds = {"gpt-4o", "gemini", "deepseek-r1", "llama-70b"};

}  // namespace

TEST_CASE("the documented ranking line parses to the exact order") {
  const auto ranking = parse_ranking("<|begin|>gpt-4o>gemini>deepseek-r1>llama-70b<|end|>", kIds);
  REQUIRE(ranking == kIds);
}

TEST_CASE("whitespace and case inside the ranking are normalized") {
  const auto ranking = parse_ranking("<|begin|> a > B <|end|>", {"a", "b"});
  REQUIRE(ranking == std::vector<std::string>{"a", "b"});
}

TEST_CASE("bad rankings raise typed errors") {
  try {
    parse_ranking("no delimiters here", {"a"});
    FAIL("expected RankingError");
  } catch (const RankingError& e) {
    REQUIRE(e.kind() == RankingErrorKind::MissingDelimiters);
  }
  for (const char* text : {"<|begin|>a>a<|end|>", "<|begin|>a<|end|>", "<|begin|>a>c<|end|>"}) {
    try {
      parse_ranking(text, {"a", "b"});
      FAIL("expected RankingError");
    } catch (const RankingError& e) {
      REQUIRE(e.kind() == RankingErrorKind::NotAPermutation);
    }
  }
}

TEST_CASE("annotation prompt embeds the rubric and the format example") {
  const auto text =
      render_annotation_prompt("INSTRUCTION BODY", kPool, prompt::TemplateSet::builtin());
  REQUIRE(text.find("**Comprehensive Compliance**") != std::string::npos);
  REQUIRE(text.find("<|begin|>gpt-4o>gemini>deepseek-r1>llama-70b<|end|>") != std::string::npos);
  REQUIRE(text.find("INSTRUCTION BODY") != std::string::npos);
  for (const auto& c : kPool) {
    REQUIRE(text.find("The model [" + c.model_id + "] output is:") != std::string::npos);
    REQUIRE(text.find(c.thought) != std::string::npos);
  }
  REQUIRE_THROWS_AS(
      render_annotation_prompt("x", {kPool[0]}, prompt::TemplateSet::builtin()),
      std::invalid_argument);
}

TEST_CASE("judge selects the top-ranked completion") {
  ScriptedProvider provider({
      "The model [gpt-4o] score: 5.\nThe model [gemini] score: 4.\nThe model [deepseek-r1] score: "
      "3.\nThe model [llama-70b] score: 3.\n<|begin|>gpt-4o>gemini>deepseek-r1>llama-70b<|end|>"});
  const auto bundle = judge(sample(), kPool, provider, "instruction", prompt::TemplateSet::builtin(),
                            judge_config());
  REQUIRE(bundle.ranking == kIds);
  REQUIRE(bundle.best_model == "gpt-4o");
  REQUIRE(bundle.final_action == kPool[0].action);
  REQUIRE(bundle.final_thought == kPool[0].thought);
  REQUIRE(bundle.scores.at("gpt-4o") == 5);
  REQUIRE(bundle.scores.at("llama-70b") == 3);
  REQUIRE(bundle.flags.empty());
}

TEST_CASE("scores place the five-scored model first") {
  ScriptedProvider provider({
      "The model [gpt-4o] score: 4.\nThe model [gemini] score: 5.\nThe model [deepseek-r1] score: "
      "3.\nThe model [llama-70b] score: 3.\n<|begin|>gemini>gpt-4o>deepseek-r1>llama-70b<|end|>"});
  const auto bundle = judge(sample(), kPool, provider, "instruction", prompt::TemplateSet::builtin(),
                            judge_config());
  REQUIRE(bundle.best_model == "gemini");
  REQUIRE(bundle.scores.at("gemini") == 5);
  int max_score = 0;
  for (const auto& [id, s] : bundle.scores) max_score = std::max(max_score, s);
  REQUIRE(bundle.scores.at(bundle.best_model) == max_score);
  REQUIRE(bundle.flags.empty());
}

TEST_CASE("a ranking that contradicts the scores is flagged, not rejected") {
  ScriptedProvider provider({
      "The model [gpt-4o] score: 4.\nThe model [gemini] score: 5.\nThe model [deepseek-r1] score: "
      "3.\nThe model [llama-70b] score: 3.\n<|begin|>gpt-4o>gemini>deepseek-r1>llama-70b<|end|>"});
  const auto bundle = judge(sample(), kPool, provider, "instruction", prompt::TemplateSet::builtin(),
                            judge_config());
  REQUIRE(bundle.best_model == "gpt-4o");
  REQUIRE_FALSE(bundle.flags.empty());
}

TEST_CASE("one malformed judge reply is retried with a reminder; two quarantine") {
  ScriptedProvider recovers(
      {"I think gpt-4o wins.",
       "<|begin|>gpt-4o>gemini>deepseek-r1>llama-70b<|end|>"});
  const auto bundle = judge(sample(), kPool, recovers, "instruction",
                            prompt::TemplateSet::builtin(), judge_config());
  REQUIRE(bundle.best_model == "gpt-4o");

  ScriptedProvider hopeless({"nope", "still nope"});
  REQUIRE_THROWS_AS(judge(sample(), kPool, hopeless, "instruction",
                          prompt::TemplateSet::builtin(), judge_config()),
                    JudgeFailure);
}

TEST_CASE("judge requires at least two completions and a fixed scale") {
  ScriptedProvider provider({"x"});
  REQUIRE_THROWS_AS(judge(sample(), {kPool[0]}, provider, "instruction",
                          prompt::TemplateSet::builtin(), judge_config()),
                    std::invalid_argument);
  auto cfg = judge_config();
  cfg.likert_max = 7;
  REQUIRE_THROWS_AS(judge(sample(), kPool, provider, "instruction",
                          prompt::TemplateSet::builtin(), cfg),
                    std::invalid_argument);
}

TEST_CASE("a **None** critique leaves the bundle untouched") {
  FeedbackBundle bundle;
  bundle.sample_id = "judge-1";
  bundle.ranking = kIds;
  bundle.best_model = "gpt-4o";
  bundle.final_thought = kPool[0].thought;
  bundle.final_action = kPool[0].action;

  ScriptedProvider provider({"  **None**  "});
  const auto merged = critique_and_merge(sample(), bundle, provider, "instruction",
                                         prompt::TemplateSet::builtin(), judge_config());
  REQUIRE(merged.final_thought == bundle.final_thought);
  REQUIRE(merged.final_action == bundle.final_action);
  REQUIRE_FALSE(merged.critique_applied);
  REQUIRE_FALSE(merged.critique.has_value());
}

TEST_CASE("a well-formed critique replaces the thought and action") {
  FeedbackBundle bundle;
  bundle.sample_id = "judge-1";
  bundle.ranking = kIds;
  bundle.best_model = "gpt-4o";
  bundle.final_thought = kPool[0].thought;
  bundle.final_action = kPool[0].action;

  ScriptedProvider provider(
      {"Thought: the deviation is a short burst that reverts to baseline\nAction: Sudden Spike "
       "Anomaly"});
  const auto merged = critique_and_merge(sample(), bundle, provider, "instruction",
                                         prompt::TemplateSet::builtin(), judge_config());
  REQUIRE(merged.critique_applied);
  REQUIRE(merged.final_thought == "the deviation is a short burst that reverts to baseline");
  REQUIRE(merged.final_action.id == 12);
  REQUIRE(merged.critique.has_value());
}

TEST_CASE("a garbled critique keeps the ranked answer and stores the text") {
  FeedbackBundle bundle;
  bundle.sample_id = "judge-1";
  bundle.ranking = kIds;
  bundle.best_model = "gpt-4o";
  bundle.final_thought = kPool[0].thought;
  bundle.final_action = kPool[0].action;

  ScriptedProvider provider({"this critique has no usable structure"});
  const auto merged = critique_and_merge(sample(), bundle, provider, "instruction",
                                         prompt::TemplateSet::builtin(), judge_config());
  REQUIRE_FALSE(merged.critique_applied);
  REQUIRE(merged.final_thought == bundle.final_thought);
  REQUIRE(merged.critique.has_value());
  REQUIRE(merged.critique->find("no usable structure") != std::string::npos);

  ScriptedProvider unknown_action({"Thought: fine\nAction: Something Else Entirely"});
  const auto merged2 = critique_and_merge(sample(), bundle, unknown_action, "instruction",
                                          prompt::TemplateSet::builtin(), judge_config());
  REQUIRE_FALSE(merged2.critique_applied);
  REQUIRE(merged2.final_action == bundle.final_action);
}
