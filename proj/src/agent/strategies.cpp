#include "srsa/agent/strategies.hpp"

#include <future>
#include <sstream>

#include "srsa/agent/router.hpp"

namespace srsa {

namespace {

std::string first_nonempty_line(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (!t.empty()) return t;
    }
    return "";
}

}  // namespace

std::string extract_rephrased_query(const QueryRecord& query, const StrategyChoice& choice) {
    const std::string line = first_nonempty_line(choice.suggestions);
    return line.empty() ? query.text : line;
}

SupportingDocuments direct_search(const QueryRecord& query, const StrategyChoice& choice,
                                  const TimeContext& time, RunContext& ctx,
                                  Transcript& transcript) {
    std::string rephrased = first_nonempty_line(choice.suggestions);
    if (rephrased.empty()) {
        // fallback case: suggestions are empty, one extra rewrite call
        const PromptText prompt = render_rewrite_prompt(query, time, ctx.templates);
        const std::string completion = ctx.llm.generate(prompt, GenParams{}, transcript);
        rephrased = first_nonempty_line(completion);
        if (rephrased.empty()) rephrased = query.text;
        transcript.events.push_back(
            DecisionEvent{"rewrite_query", json{{"rephrased", rephrased}}});
    }

    auto response = ctx.search.search(ctx.make_request(rephrased), transcript);

    SupportingDocuments docs;
    docs.sections.push_back(DocSection{"direct", response.hits, std::nullopt});
    return docs;
}

SupportingDocuments parallel_search(const QueryRecord& query, const StrategyChoice& choice,
                                    const TimeContext& time, RunContext& ctx,
                                    Transcript& transcript) {
    const std::string rephrased = extract_rephrased_query(query, choice);
    const PromptText prompt =
        render_parallel_prompt(rephrased, choice.suggestions, ctx.templates);
    const std::string completion = ctx.llm.generate(prompt, GenParams{}, transcript);

    auto outcome = parse_subquestions(completion, ctx.config.max_subquestions);
    transcript.events.push_back(
        ParseEvent{"subquestions", completion, outcome.ok() ? "ok" : outcome.reason});
    if (!outcome.ok()) {
        transcript.events.push_back(DecisionEvent{
            "degrade_to_direct", json{{"reason", outcome.reason}, {"query", query.text}}});
        // direct search over the raw query, no further rewriting
        return direct_search(query, StrategyChoice{Strategy::Direct, query.text, false}, time,
                             ctx, transcript);
    }
    const auto& subquestions = *outcome.value;

    struct SubResult {
        Transcript events;  // local event buffer, merged in index order
        std::vector<SearchHit> hits;
        std::string error;
    };
    std::vector<SubResult> results(subquestions.size());

    auto run_one = [&](std::size_t i) {
        try {
            auto response =
                ctx.search.search(ctx.make_request(subquestions[i]), results[i].events);
            results[i].hits = response.hits;
        } catch (const GatewayError& e) {
            results[i].error = e.what();
        }
    };

    if (ctx.config.concurrent_subsearches) {
        std::vector<std::future<void>> futures;
        futures.reserve(subquestions.size());
        for (std::size_t i = 0; i < subquestions.size(); ++i)
            futures.push_back(std::async(std::launch::async, run_one, i));
        for (auto& f : futures) f.get();
    } else {
        for (std::size_t i = 0; i < subquestions.size(); ++i) run_one(i);
    }

    // assemble by sub-question index so output order is deterministic
    SupportingDocuments docs;
    for (std::size_t i = 0; i < subquestions.size(); ++i) {
        for (auto& e : results[i].events.events) transcript.events.push_back(std::move(e));
        if (!results[i].error.empty()) {
            transcript.events.push_back(DecisionEvent{
                "subsearch_error",
                json{{"index", i}, {"query", subquestions[i]}, {"error", results[i].error}}});
        }
        docs.sections.push_back(DocSection{"sub-question " + std::to_string(i + 1),
                                           std::move(results[i].hits), std::nullopt});
    }
    return docs;
}

SupportingDocuments planning_search(const QueryRecord& query, const StrategyChoice& choice,
                                    RunContext& ctx, Transcript& transcript) {
    PlanningState state;
    state.current_query = extract_rephrased_query(query, choice);

    auto search_current = [&]() -> std::vector<SearchHit> {
        try {
            return ctx.search.search(ctx.make_request(state.current_query), transcript).hits;
        } catch (const GatewayError& e) {
            transcript.events.push_back(DecisionEvent{
                "planning_search_error",
                json{{"iteration", state.iteration}, {"query", state.current_query},
                     {"error", e.what()}}});
            return {};
        }
    };

    // first-step search; its full hits go into the output untouched
    SearchResponse first;
    try {
        first = ctx.search.search(ctx.make_request(state.current_query), transcript);
    } catch (const GatewayError& e) {
        transcript.events.push_back(DecisionEvent{
            "planning_search_error",
            json{{"iteration", 1}, {"query", state.current_query}, {"error", e.what()}}});
    }
    state.first_step_hits = first;
    std::vector<SearchHit> latest = first.hits;

    const int max_iter = ctx.config.max_iterations;
    for (state.iteration = 1; state.iteration <= max_iter; ++state.iteration) {
        const int i = state.iteration;

        if (i >= 2) {
            const PromptText sp = render_summarize_prompt(query, latest, i, ctx.templates);
            const std::string summary = ctx.llm.generate(sp, GenParams{}, transcript);
            state.memory.push_back(summary);
            state.step_summaries.emplace_back(i, summary);
        }

        const PromptText pp =
            render_planning_prompt(query, choice.suggestions, state.current_query, latest,
                                   state.memory, i, max_iter, ctx.templates);
        const std::string completion = ctx.llm.generate(pp, GenParams{}, transcript);
        auto outcome = parse_planning_decision(completion);
        transcript.events.push_back(
            ParseEvent{"planning_decision", completion, outcome.ok() ? "ok" : outcome.reason});

        PlanningDecision decision;
        if (outcome.ok()) {
            decision = *outcome.value;
        } else {
            // fail-safe: unparseable reasoning stops the loop and answers
            decision = PlanningDecision{PlanningDecision::Quality::good, std::nullopt, {}, true};
            transcript.events.push_back(DecisionEvent{
                "planning_parse_failsafe", json{{"iteration", i}, {"reason", outcome.reason}}});
        }
        transcript.events.push_back(DecisionEvent{
            "planning_step",
            json{{"iteration", i},
                 {"quality",
                  decision.quality_verdict == PlanningDecision::Quality::good ? "good" : "poor"},
                 {"rewritten_query",
                  decision.rewritten_query ? json(*decision.rewritten_query) : json(nullptr)},
                 {"explore_points", decision.explore_points},
                 {"sufficient", decision.sufficient}}});

        if (decision.sufficient) {
            state.stop_reason = PlanningState::Stop::sufficient;
            break;
        }
        if (i == max_iter) {
            state.stop_reason = PlanningState::Stop::max_iterations;
            break;
        }

        // next query: rewrite wins, then the first explore point, then stay
        if (decision.rewritten_query) state.current_query = *decision.rewritten_query;
        else if (!decision.explore_points.empty())
            state.current_query = decision.explore_points.front();
        latest = search_current();
    }

    transcript.events.push_back(DecisionEvent{
        "planning_stop",
        json{{"iteration", state.iteration},
             {"stop_reason", state.stop_reason == PlanningState::Stop::sufficient
                                 ? "sufficient"
                                 : "max_iterations"}}});

    SupportingDocuments docs;
    docs.sections.push_back(DocSection{"first step", state.first_step_hits.hits, std::nullopt});
    for (const auto& [iter, summary] : state.step_summaries)
        docs.sections.push_back(
            DocSection{"iteration " + std::to_string(iter) + " summary", {}, summary});
    return docs;
}

std::string final_answer(const QueryRecord& query, const SupportingDocuments& docs,
                         RunContext& ctx, Transcript& transcript) {
    const PromptText prompt = render_rag_prompt(query, docs, ctx.templates);
    const std::string answer = ctx.llm.generate(prompt, GenParams{}, transcript);
    transcript.final_answer = answer;
    transcript.stop_reason = StopReason::completed;
    return answer;
}

AgentAnswer run_srsa(const QueryRecord& query, RunContext& ctx) {
    Transcript transcript;
    transcript.query_id = query.id;
    transcript.agent_kind = AgentKind::SRSA;
    transcript.template_digest = ctx.templates.digest();

    try {
        const TimeContext time = now_context(ctx.clock);
        const StrategyChoice choice = route(query, time, ctx, transcript);

        SupportingDocuments docs;
        switch (choice.strategy) {
            case Strategy::Direct:
                docs = direct_search(query, choice, time, ctx, transcript);
                break;
            case Strategy::Parallel:
                docs = parallel_search(query, choice, time, ctx, transcript);
                break;
            case Strategy::Planning:
                docs = planning_search(query, choice, ctx, transcript);
                break;
        }
        const std::string answer = final_answer(query, docs, ctx, transcript);
        return AgentAnswer{answer, std::move(transcript)};
    } catch (const GatewayError& e) {
        transcript.stop_reason = StopReason::backend_error;
        transcript.events.push_back(DecisionEvent{"backend_error", json{{"error", e.what()}}});
        return AgentAnswer{"", std::move(transcript)};
    }
}

}  // namespace srsa
