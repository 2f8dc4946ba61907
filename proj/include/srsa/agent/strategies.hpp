#pragma once

#include "srsa/agent/engine.hpp"
#include "srsa/protocol/parsers.hpp"

namespace srsa {

/// Iterative planning loop state. first_step_hits stays immutable after the
/// initial search; one summary exists per completed iteration >= 2.
struct PlanningState {
    enum class Stop { sufficient, max_iterations };

    int iteration = 1;
    std::string current_query;
    SearchResponse first_step_hits;
    std::vector<std::pair<int, std::string>> step_summaries;  // (iteration, summary)
    Stop stop_reason = Stop::sufficient;
    std::vector<std::string> memory;  // per-iteration compressed results
};

/// Rephrased query Q_r: first non-empty suggestion line when present,
/// otherwise the raw query text.
std::string extract_rephrased_query(const QueryRecord& query, const StrategyChoice& choice);

SupportingDocuments direct_search(const QueryRecord& query, const StrategyChoice& choice,
                                  const TimeContext& time, RunContext& ctx,
                                  Transcript& transcript);

SupportingDocuments parallel_search(const QueryRecord& query, const StrategyChoice& choice,
                                    const TimeContext& time, RunContext& ctx,
                                    Transcript& transcript);

SupportingDocuments planning_search(const QueryRecord& query, const StrategyChoice& choice,
                                    RunContext& ctx, Transcript& transcript);

/// Exactly one RAG call; the answer is recorded on the transcript.
std::string final_answer(const QueryRecord& query, const SupportingDocuments& docs,
                         RunContext& ctx, Transcript& transcript);

/// Full SRSA pipeline: time context -> route -> strategy -> final answer.
AgentAnswer run_srsa(const QueryRecord& query, RunContext& ctx);

}  // namespace srsa
