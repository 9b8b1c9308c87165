#pragma once
// Pool fan-out: one completion per pool member for each sample, with a
// per-provider in-flight cap that holds across concurrently processed
// samples. Results come back in pool order regardless of arrival order;
// failed members are recorded, and a sample with zero usable completions is
// reported as AllProvidersFailed so the caller can quarantine it.

#include <condition_variable>
#include <future>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "tsrkit/annotate/provider.hpp"
#include "tsrkit/core/record.hpp"
#include "tsrkit/prompt/parse.hpp"
#include "tsrkit/prompt/templates.hpp"

namespace tsrkit::annotate {

class AllProvidersFailed : public std::runtime_error {
 public:
  explicit AllProvidersFailed(const std::string& sample_id)
      : std::runtime_error("all providers failed for sample " + sample_id) {}
};

namespace detail {

class Semaphore {
 public:
  explicit Semaphore(int count) : count_(count) {}

  void acquire() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [this] { return count_ > 0; });
    --count_;
  }
  void release() {
    {
      std::lock_guard lock(mu_);
      ++count_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int count_;
};

}  // namespace detail

class ProviderPool {
 public:
  struct Member {
    ProviderConfig config;
    std::shared_ptr<Provider> provider;
    std::unique_ptr<detail::Semaphore> gate;
  };

  void add(ProviderConfig config, std::shared_ptr<Provider> provider) {
    check_provider_config(config);
    for (const auto& m : members_)
      if (m.config.model_id == config.model_id)
        throw std::invalid_argument("duplicate model_id in pool: " + config.model_id);
    auto gate = std::make_unique<detail::Semaphore>(config.max_in_flight);
    members_.push_back({std::move(config), std::move(provider), std::move(gate)});
  }

  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }

  std::vector<std::string> model_ids() const {
    std::vector<std::string> ids;
    ids.reserve(members_.size());
    for (const auto& m : members_) ids.push_back(m.config.model_id);
    return ids;
  }

  // One gated call with the member's retry budget.
  ChatResponse call(std::size_t index, const ChatRequest& request) {
    Member& m = members_.at(index);
    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= m.config.retries; ++attempt) {
      m.gate->acquire();
      struct Release {
        detail::Semaphore* g;
        ~Release() { g->release(); }
      } release{m.gate.get()};
      try {
        return m.provider->complete(request);
      } catch (const std::exception& e) {
        last_error = e.what();
      }
    }
    throw ProviderError(last_error + " (" + std::to_string(m.config.retries + 1) + " attempts)");
  }

 private:
  std::vector<Member> members_;
};

struct PoolResult {
  std::vector<Completion> completions;      // successfully parsed, pool order
  std::vector<CompletionFailure> failures;  // provider or parse failures, pool order
};

inline PoolResult sample_completions(const Sample& sample, ProviderPool& pool,
                                     const prompt::TemplateSet& templates,
                                     const std::vector<prompt::Exemplar>& few_shots,
                                     bool include_image = false) {
  if (pool.empty()) throw std::invalid_argument("provider pool is empty");
  const auto bundle = prompt::render_instruction(sample, few_shots, templates);
  ChatRequest request;
  request.prompt = bundle.text;
  request.sample_id = sample.id;
  if (include_image && sample.image_ref) request.image_path = sample.image_ref;

  struct Slot {
    std::string model_id;
    std::string text;
    std::uint64_t latency_ms = 0;
    std::string error;
  };
  std::vector<std::future<Slot>> futures;
  futures.reserve(pool.size());
  const auto ids = pool.model_ids();
  for (std::size_t i = 0; i < pool.size(); ++i) {
    futures.push_back(std::async(std::launch::async, [&pool, &request, &ids, i] {
      Slot slot;
      slot.model_id = ids[i];
      try {
        auto res = pool.call(i, request);
        slot.text = std::move(res.text);
        slot.latency_ms = res.latency_ms;
      } catch (const std::exception& e) {
        slot.error = e.what();
      }
      return slot;
    }));
  }

  PoolResult out;
  const Arity arity = sample.segment.arity();
  for (auto& fut : futures) {
    Slot slot = fut.get();
    if (!slot.error.empty()) {
      out.failures.push_back({sample.id, slot.model_id, slot.error});
      continue;
    }
    try {
      const auto answer = prompt::parse_boxed(slot.text);
      Completion c;
      c.sample_id = sample.id;
      c.model_id = slot.model_id;
      c.thought = answer.thought;
      c.action = prompt::normalize_action(answer.action_name, arity);
      c.raw_response = std::move(slot.text);
      c.latency_ms = slot.latency_ms;
      out.completions.push_back(std::move(c));
    } catch (const std::exception& e) {
      out.failures.push_back({sample.id, slot.model_id, std::string("unparseable: ") + e.what()});
    }
  }
  if (out.completions.empty()) throw AllProvidersFailed(sample.id);
  return out;
}

}  // namespace tsrkit::annotate
