#pragma once

#include "srsa/agent/engine.hpp"

namespace srsa {

/// One LLM call classifying the query into {Direct, Parallel, Planning} plus
/// overview suggestions. Malformed completions are absorbed by the Direct
/// fallback, never retried.
StrategyChoice route(const QueryRecord& query, const TimeContext& time, RunContext& ctx,
                     Transcript& transcript);

}  // namespace srsa
