#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srsa/core/types.hpp"

namespace srsa {

/// Either a parsed value or a structured failure carrying the raw text
/// verbatim. Parsers never throw on malformed input.
template <typename T>
struct ParseOutcome {
    std::optional<T> value;
    std::string reason;  // empty on success
    std::string raw;

    bool ok() const { return value.has_value(); }

    static ParseOutcome success(T v, std::string raw_text) {
        return {std::move(v), "", std::move(raw_text)};
    }
    static ParseOutcome failure(std::string why, std::string raw_text) {
        return {std::nullopt, std::move(why), std::move(raw_text)};
    }
};

/// Planning reasoning step output.
struct PlanningDecision {
    enum class Quality { good, poor };
    Quality quality_verdict = Quality::good;
    std::optional<std::string> rewritten_query;  // present iff quality is poor
    std::vector<std::string> explore_points;
    bool sufficient = false;

    bool operator==(const PlanningDecision&) const = default;
};

/// ReAct thought output: either a search action or a final answer.
struct ReactAction {
    enum class Kind { search, final_answer };
    Kind kind = Kind::final_answer;
    std::string text;  // search query or answer text

    bool operator==(const ReactAction&) const = default;
};

/// Raw integer judge scores for one agent, metric name -> (score, justification).
struct JudgeScoreBlock {
    std::map<std::string, int> scores;  // keys: the four canonical metric names
    std::map<std::string, std::string> justifications;

    bool operator==(const JudgeScoreBlock&) const = default;
};

inline const std::vector<std::string>& judge_metrics() {
    static const std::vector<std::string> m = {"informativeness", "completeness", "novelty",
                                               "actionability"};
    return m;
}

/// Total function: a valid STRATEGY line decides; anything else is the
/// Direct fallback with fallback_applied=true, never an error.
StrategyChoice parse_router_output(const std::string& raw);

/// Numbered or bulleted lines become sub-questions, capped at max_subquestions.
ParseOutcome<std::vector<std::string>> parse_subquestions(const std::string& raw,
                                                          int max_subquestions = 8);

ParseOutcome<PlanningDecision> parse_planning_decision(const std::string& raw);

/// Per-agent blocks keyed by the agent name as it appeared after AGENT:.
ParseOutcome<std::map<std::string, JudgeScoreBlock>> parse_judge_scores(const std::string& raw);

ParseOutcome<ReactAction> parse_react_action(const std::string& raw);

// small shared helpers, exposed for tests
std::string trim(const std::string& s);
std::string to_lower(const std::string& s);

}  // namespace srsa
