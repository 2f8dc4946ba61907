#include "srsa/agent/baselines.hpp"

#include <sstream>

#include "srsa/protocol/parsers.hpp"

namespace srsa {

AgentAnswer run_simple(const QueryRecord& query, RunContext& ctx) {
    Transcript transcript;
    transcript.query_id = query.id;
    transcript.agent_kind = AgentKind::Simple;
    transcript.template_digest = ctx.templates.digest();

    try {
        auto response = ctx.search.search(ctx.make_request(query.text), transcript);

        SupportingDocuments docs;
        docs.sections.push_back(DocSection{"search", response.hits, std::nullopt});
        const PromptText prompt = render_rag_prompt(query, docs, ctx.templates);
        const std::string answer = ctx.llm.generate(prompt, GenParams{}, transcript);
        transcript.final_answer = answer;
        transcript.stop_reason = StopReason::completed;
        return AgentAnswer{answer, std::move(transcript)};
    } catch (const GatewayError& e) {
        transcript.stop_reason = StopReason::backend_error;
        transcript.events.push_back(DecisionEvent{"backend_error", json{{"error", e.what()}}});
        return AgentAnswer{"", std::move(transcript)};
    }
}

AgentAnswer run_react(const QueryRecord& query, RunContext& ctx) {
    Transcript transcript;
    transcript.query_id = query.id;
    transcript.agent_kind = AgentKind::ReAct;
    transcript.template_digest = ctx.templates.digest();

    try {
        const TimeContext time = now_context(ctx.clock);
        const PromptText rephrase = render_rewrite_prompt(query, time, ctx.templates);
        std::string rephrased = trim(ctx.llm.generate(rephrase, GenParams{}, transcript));
        if (rephrased.empty()) rephrased = query.text;

        std::ostringstream history;  // raw, untruncated, no summarization
        std::string answer;
        bool answered = false;

        for (int iter = 1; iter <= ctx.config.max_iterations; ++iter) {
            const PromptText tp =
                render_react_thought_prompt(query, rephrased, history.str(), ctx.templates);
            const std::string thought = ctx.llm.generate(tp, GenParams{}, transcript);
            auto action = parse_react_action(thought);
            transcript.events.push_back(
                ParseEvent{"react_action", thought, action.ok() ? "ok" : action.reason});

            if (!action.ok()) {
                // unparseable thought counts as FINAL with the raw text
                transcript.events.push_back(DecisionEvent{
                    "react_unparseable_thought", json{{"iteration", iter}}});
                answer = thought;
                answered = true;
                break;
            }
            if (action.value->kind == ReactAction::Kind::final_answer) {
                answer = action.value->text;
                answered = true;
                break;
            }

            const std::string& search_query = action.value->text;
            auto response = ctx.search.search(ctx.make_request(search_query), transcript);
            history << "Thought " << iter << ": " << thought << "\n";
            history << "Action " << iter << ": search " << search_query << "\n";
            history << "Observation " << iter << ":\n" << hits_as_text(response.hits) << "\n";
        }

        if (answered) {
            transcript.final_answer = answer;
            transcript.stop_reason = StopReason::completed;
        } else {
            // bound hit: closing call over the entire iteration history
            const PromptText cp = render_react_close_prompt(query, history.str(), ctx.templates);
            answer = ctx.llm.generate(cp, GenParams{}, transcript);
            transcript.final_answer = answer;
            transcript.stop_reason = StopReason::max_iterations;
        }
        return AgentAnswer{answer, std::move(transcript)};
    } catch (const GatewayError& e) {
        transcript.stop_reason = StopReason::backend_error;
        transcript.events.push_back(DecisionEvent{"backend_error", json{{"error", e.what()}}});
        return AgentAnswer{"", std::move(transcript)};
    }
}

}  // namespace srsa
