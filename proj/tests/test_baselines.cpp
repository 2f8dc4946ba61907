#include <doctest.h>

#include "srsa/agent/baselines.hpp"

using namespace srsa;

namespace {

const QueryRecord kQuery{"q1", Domain::travel,
                         "Visiting Tokyo next month with my partner, what should we plan?", {}};

std::vector<SearchHit> hits(std::initializer_list<const char*> titles) {
    std::vector<SearchHit> out;
    for (const char* t : titles) out.push_back({t, std::string("https://") + t, "content", 0.5});
    return out;
}

struct Fixture {
    TemplateSet templates = TemplateSet::defaults();
    ScriptedLlm llm;
    MockSearch search;
    RunContext ctx;

    Fixture(std::vector<std::string> completions,
            std::map<std::string, std::vector<SearchHit>> fixtures)
        : llm(std::move(completions)),
          search(std::move(fixtures), fixed_clock("2024-07-01T00:00:00Z")),
          ctx{llm, search, templates, EngineConfig{}, fixed_clock("2024-07-01T00:00:00Z")} {}
};

std::vector<int> event_kinds(const Transcript& t) {
    std::vector<int> kinds;  // 0 = llm, 1 = search
    for (const auto& e : t.events) {
        if (std::holds_alternative<LlmCallEvent>(e)) kinds.push_back(0);
        if (std::holds_alternative<SearchCallEvent>(e)) kinds.push_back(1);
    }
    return kinds;
}

}  // namespace

TEST_CASE("run_simple: one raw-query search then one RAG call") {
    Fixture f({"the answer"}, {{kQuery.text, hits({"h1", "h2"})}});
    auto result = run_simple(kQuery, f.ctx);

    CHECK(result.answer == "the answer");
    CHECK(event_kinds(result.transcript) == std::vector<int>{1, 0});
    CHECK(result.transcript.count_llm_calls() == 1);  // zero rephrasing calls
    const auto& call = std::get<SearchCallEvent>(result.transcript.events[0]);
    CHECK(call.request.query == kQuery.text);  // verbatim, no rephrase
    CHECK(result.transcript.stop_reason == StopReason::completed);
}

TEST_CASE("run_react: search then FINAL") {
    Fixture f({"tokyo itinerary june couple",                 // rephrase
               "ACTION: search tokyo itinerary june couple",  // T1
               "FINAL: Plan Shibuya, Asakusa and a day trip."},
              {{"tokyo itinerary june couple", hits({"h1"})}});
    auto result = run_react(kQuery, f.ctx);

    CHECK(result.answer == "Plan Shibuya, Asakusa and a day trip.");
    CHECK(event_kinds(result.transcript) == std::vector<int>{0, 0, 1, 0});
    CHECK(result.transcript.count_search_calls() == 1);
    CHECK(result.transcript.stop_reason == StopReason::completed);
}

TEST_CASE("run_react: never FINAL forces closing call at the bound") {
    std::vector<std::string> script{"rephrased"};
    for (int i = 1; i <= 5; ++i)
        script.push_back("ACTION: search step " + std::to_string(i));
    script.push_back("closing answer");
    std::map<std::string, std::vector<SearchHit>> fixtures;
    for (int i = 1; i <= 5; ++i) fixtures["step " + std::to_string(i)] = hits({"h"});

    Fixture f(script, fixtures);
    auto result = run_react(kQuery, f.ctx);

    CHECK(result.transcript.count_search_calls() == 5);
    CHECK(result.transcript.count_llm_calls() == 7);  // rephrase + 5 thoughts + closing
    CHECK(result.answer == "closing answer");
    CHECK(result.transcript.stop_reason == StopReason::max_iterations);
}

TEST_CASE("run_react: observation embeds all hits untruncated") {
    Fixture f({"rq", "ACTION: search rq", "FINAL: ok"},
              {{"rq", hits({"alpha", "beta", "gamma"})}});
    auto result = run_react(kQuery, f.ctx);

    // the second thought prompt must contain every observed hit
    std::vector<const LlmCallEvent*> calls;
    for (const auto& e : result.transcript.events)
        if (auto* c = std::get_if<LlmCallEvent>(&e)) calls.push_back(c);
    REQUIRE(calls.size() == 3);  // rephrase, T1, T2
    CHECK(calls[2]->prompt.user.find("alpha") != std::string::npos);
    CHECK(calls[2]->prompt.user.find("beta") != std::string::npos);
    CHECK(calls[2]->prompt.user.find("gamma") != std::string::npos);
}

TEST_CASE("run_react: unparseable thought becomes the answer") {
    Fixture f({"rq", "I will just ramble here with no action."}, {});
    auto result = run_react(kQuery, f.ctx);
    CHECK(result.answer == "I will just ramble here with no action.");
    CHECK(result.transcript.count_search_calls() == 0);
    CHECK(result.transcript.stop_reason == StopReason::completed);
}
