#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "srsa/core/types.hpp"

namespace srsa {

enum class AgentKind { SRSA, Simple, ReAct };
enum class StopReason { completed, max_iterations, backend_error };

std::string to_string(AgentKind k);
std::string to_string(StopReason r);
AgentKind agent_kind_from_string(const std::string& s);
StopReason stop_reason_from_string(const std::string& s);

struct LlmCallEvent {
    PromptText prompt;
    GenParams params;
    std::string completion;  // raw, verbatim
    int attempts = 1;

    bool operator==(const LlmCallEvent&) const = default;
};

struct SearchCallEvent {
    SearchRequest request;
    SearchResponse response;

    bool operator==(const SearchCallEvent&) const = default;
};

struct ParseEvent {
    std::string kind;     // which parser ran
    std::string raw;      // input text, verbatim
    std::string outcome;  // "ok" or a failure reason

    bool operator==(const ParseEvent&) const = default;
};

struct DecisionEvent {
    std::string kind;
    json payload;

    bool operator==(const DecisionEvent&) const = default;
};

using TranscriptEvent = std::variant<LlmCallEvent, SearchCallEvent, ParseEvent, DecisionEvent>;

/// Complete replayable record of one agent run over one query.
struct Transcript {
    std::string query_id;
    AgentKind agent_kind = AgentKind::SRSA;
    std::vector<TranscriptEvent> events;
    std::string final_answer;
    StopReason stop_reason = StopReason::completed;
    std::string template_digest;  // hash of the prompt template set in force

    bool operator==(const Transcript&) const = default;

    std::size_t count_llm_calls() const;
    std::size_t count_search_calls() const;
};

void to_json(json& j, const Transcript& v);
void from_json(const json& j, Transcript& v);

/// Persists to <dir>/<query_id>.<agent_kind>.json; returns the path written.
std::filesystem::path save_transcript(const Transcript& t, const std::filesystem::path& dir);
Transcript load_transcript(const std::filesystem::path& file);

}  // namespace srsa
