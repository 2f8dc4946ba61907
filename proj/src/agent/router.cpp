#include "srsa/agent/router.hpp"

#include "srsa/protocol/parsers.hpp"

namespace srsa {

StrategyChoice route(const QueryRecord& query, const TimeContext& time, RunContext& ctx,
                     Transcript& transcript) {
    const PromptText prompt = render_router_prompt(query, time, ctx.templates);
    const std::string completion = ctx.llm.generate(prompt, GenParams{}, transcript);

    const StrategyChoice choice = parse_router_output(completion);
    transcript.events.push_back(ParseEvent{
        "router_output", completion, choice.fallback_applied ? "fallback_to_direct" : "ok"});
    transcript.events.push_back(DecisionEvent{
        "strategy_choice",
        json{{"strategy", to_string(choice.strategy)},
             {"suggestions", choice.suggestions},
             {"fallback_applied", choice.fallback_applied}}});
    return choice;
}

}  // namespace srsa
