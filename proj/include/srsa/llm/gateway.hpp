#pragma once

#include <chrono>
#include <deque>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "srsa/core/transcript.hpp"
#include "srsa/core/types.hpp"

namespace srsa {

class GatewayError : public std::runtime_error {
public:
    enum class Kind {
        backend_unreachable,  // retryable
        backend_rejected,     // non-retryable, carries status
        empty_completion,
        quota_exhausted,
        malformed_response,
    };

    GatewayError(Kind kind, const std::string& what, int status = 0)
        : std::runtime_error(what), kind_(kind), status_(status) {}

    Kind kind() const { return kind_; }
    int status() const { return status_; }

private:
    Kind kind_;
    int status_;
};

using Clock = std::function<std::chrono::system_clock::time_point()>;

Clock system_clock_source();
/// Fixed clock from an ISO-8601 instant like "2024-07-01T00:00:00Z".
Clock fixed_clock(const std::string& iso_instant);

/// Pure function of the clock; weekday derived from the civil date (UTC).
TimeContext now_context(const Clock& clock);

std::string iso_instant(std::chrono::system_clock::time_point tp);

/// Uniform text-generation interface. Implementations append one LlmCallEvent
/// per successful call to the active transcript.
class LlmGateway {
public:
    virtual ~LlmGateway() = default;
    virtual std::string generate(const PromptText& prompt, const GenParams& params,
                                 Transcript& transcript) = 0;
};

/// Deterministic FIFO stub: the k-th call returns the k-th scripted
/// completion regardless of prompt content. Dequeues are serialized so
/// concurrent callers observe a single global order.
class ScriptedLlm : public LlmGateway {
public:
    explicit ScriptedLlm(std::vector<std::string> completions, bool record_prompts = false);

    std::string generate(const PromptText& prompt, const GenParams& params,
                         Transcript& transcript) override;

    std::size_t remaining() const;
    const std::vector<PromptText>& recorded_prompts() const { return seen_; }

private:
    mutable std::mutex mu_;
    std::deque<std::string> queue_;
    bool record_prompts_;
    std::vector<PromptText> seen_;
};

struct LlmConfig {
    std::string endpoint;  // full chat-completions URL
    std::string api_key;
    std::string model;
    int retries = 3;           // max attempts for retryable failures
    double timeout_seconds = 30.0;
    double backoff_base_seconds = 0.2;  // doubled per attempt; 0 in tests
};

/// OpenAI-style chat-completions request body (system+user messages).
/// max_tokens is omitted when unset so the backend applies its context
/// window default.
std::string build_chat_body(const PromptText& prompt, const GenParams& params,
                            const std::string& model);

/// HTTP adapter for chat-completions endpoints. Retries backend_unreachable
/// failures up to config.retries attempts with exponential backoff; a retried
/// success still produces exactly one LlmCallEvent, annotated with the
/// attempt count.
class HttpLlm : public LlmGateway {
public:
    explicit HttpLlm(LlmConfig config);

    std::string generate(const PromptText& prompt, const GenParams& params,
                         Transcript& transcript) override;

private:
    LlmConfig config_;
};

}  // namespace srsa
