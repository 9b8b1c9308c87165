#pragma once
// Offline mock provider. Responses are pure functions of
// (model_id, sample_id, prompt kind) via FNV-1a hashing, so a pipeline run
// with mock providers is reproducible byte for byte. The mock answers
// instruction prompts with a well-formed boxed answer, annotation prompts
// with score lines plus a ranking, and critique prompts mostly with the
// no-change token.

#include <atomic>
#include <chrono>
#include <functional>
#include <memory>
#include <regex>
#include <string>
#include <thread>
#include <vector>

#include "tsrkit/annotate/provider.hpp"
#include "tsrkit/core/taxonomy.hpp"

namespace tsrkit::annotate {

struct MockStats {
  std::atomic<int> in_flight{0};
  std::atomic<int> max_in_flight{0};
  std::atomic<int> calls{0};

  void enter() {
    const int now = ++in_flight;
    int seen = max_in_flight.load();
    while (now > seen && !max_in_flight.compare_exchange_weak(seen, now)) {
    }
    ++calls;
  }
  void leave() { --in_flight; }
};

class MockProvider final : public Provider {
 public:
  explicit MockProvider(std::string model_id, std::shared_ptr<MockStats> stats = nullptr,
                        std::chrono::milliseconds simulated_work = std::chrono::milliseconds(0))
      : model_id_(std::move(model_id)), stats_(std::move(stats)), work_(simulated_work) {}

  // Requests matching this predicate raise ProviderError; used to exercise
  // retry and quarantine paths.
  void fail_when(std::function<bool(const ChatRequest&)> predicate) {
    fail_ = std::move(predicate);
  }

  const std::string& model_id() const override { return model_id_; }

  ChatResponse complete(const ChatRequest& request) override {
    struct Guard {
      MockStats* s;
      ~Guard() {
        if (s) s->leave();
      }
    } guard{stats_.get()};
    if (stats_) stats_->enter();
    if (work_.count() > 0) std::this_thread::sleep_for(work_);
    if (fail_ && fail_(request)) throw ProviderError(model_id_ + ": simulated failure");

    const std::string& p = request.prompt;
    ChatResponse res;
    if (p.find("Please evaluate the consistency") != std::string::npos) {
      res.text = annotation_response(p, request.sample_id);
    } else if (p.find("constructive feedback") != std::string::npos) {
      res.text = critique_response(p, request.sample_id);
    } else {
      res.text = instruction_response(p, request.sample_id);
    }
    res.latency_ms = 50 + key(request.sample_id, "latency") % 400;
    return res;
  }

 private:
  std::uint64_t key(const std::string& sample_id, const char* kind) const {
    return detail::fnv1a(kind, detail::fnv1a(sample_id, detail::fnv1a(model_id_)));
  }

  std::string instruction_response(const std::string& prompt, const std::string& sample_id) const {
    const bool normal = prompt.find("it is a normal sequence") != std::string::npos;
    const Arity arity = prompt.find("multivariate time series anomaly detection") != std::string::npos
                            ? Arity::Multivariate
                            : Arity::Univariate;
    const auto& cats = catalog(arity);
    const AnomalyCategory& chosen =
        normal ? cats[0] : cats[1 + key(sample_id, "category") % (cats.size() - 1)];

    static const char* openings[4] = {
        "The sequence mostly follows its established pattern, but the flagged stretch departs from it.",
        "Comparing the suspect region with the surrounding behavior shows a clear structural difference.",
        "Local statistics inside the unusual region disagree with the rest of the series.",
        "The series is stable outside one region whose dynamics do not fit the established behavior."};
    const char* opening = openings[key(sample_id, "opening") % 4];

    std::string thought;
    if (normal) {
      thought = "The values stay within their usual spread and the structure is steady throughout, "
                "so nothing separates any region from the rest. " +
                std::string("No candidate window stands out.");
    } else {
      thought = std::string(opening) + " Its signature matches the definition of " + chosen.name +
                ": " + chosen.definition;
    }
    return "Thought: \\boxed1{" + thought + "}\nAction: \\boxed2{" + chosen.name + "}";
  }

  std::string annotation_response(const std::string& prompt, const std::string& sample_id) const {
    // Pool membership is read back from the annotation prompt itself.
    static const std::regex model_line(R"(The model \[([^\]]+)\] output is:)");
    std::vector<std::string> ids;
    for (auto it = std::sregex_iterator(prompt.begin(), prompt.end(), model_line);
         it != std::sregex_iterator(); ++it)
      ids.push_back((*it)[1].str());

    struct Entry {
      std::string id;
      int score;
      std::uint64_t tiebreak;
    };
    std::vector<Entry> entries;
    for (const auto& id : ids) {
      const std::uint64_t h = detail::fnv1a(id, detail::fnv1a(sample_id, detail::fnv1a("score")));
      entries.push_back({id, static_cast<int>(2 + h % 4), h});
    }
    std::string out;
    for (const auto& e : entries) {
      out += "The model [" + e.id + "] score: " + std::to_string(e.score) +
             ". The answer tracks the reference behavior for this sample.\n";
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.tiebreak < b.tiebreak;
    });
    out += "\nBased on the ratings, the ranking is:\n<|begin|>";
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i > 0) out += ">";
      out += entries[i].id;
    }
    out += "<|end|>";
    return out;
  }

  std::string critique_response(const std::string& prompt, const std::string& sample_id) const {
    if (key(sample_id, "critique") % 5 != 0) return "**None**";
    // Rewrite the thought, keep the action.
    static const std::regex answer(R"(The model answer is:\s*\nThought: ([^\n]*)\nAction: ([^\n]*)\n)");
    std::smatch m;
    if (!std::regex_search(prompt, m, answer)) return "**None**";
    std::string thought = m[1].str();
    std::string action = m[2].str();
    return "Thought: " + thought +
           " In addition, the boundary of the affected region should be called out explicitly, since "
           "the surrounding points behave normally.\nAction: " + action;
  }

  std::string model_id_;
  std::shared_ptr<MockStats> stats_;
  std::chrono::milliseconds work_;
  std::function<bool(const ChatRequest&)> fail_;
};

}  // namespace tsrkit::annotate
