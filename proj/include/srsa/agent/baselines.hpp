#pragma once

#include "srsa/agent/engine.hpp"

namespace srsa {

/// Single-round baseline: one search with the raw query text (no rephrasing),
/// then one RAG call.
AgentAnswer run_simple(const QueryRecord& query, RunContext& ctx);

/// ReAct baseline with a rephrasing module: up to max_iterations of
/// Thought -> Action -> Observation, observations embedded untruncated, no
/// summarization. Ends on FINAL or, at the bound, with a closing call over
/// the entire iteration history.
AgentAnswer run_react(const QueryRecord& query, RunContext& ctx);

}  // namespace srsa
