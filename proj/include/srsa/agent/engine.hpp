#pragma once

#include "srsa/core/transcript.hpp"
#include "srsa/core/types.hpp"
#include "srsa/llm/gateway.hpp"
#include "srsa/protocol/templates.hpp"
#include "srsa/search/gateway.hpp"

namespace srsa {

struct EngineConfig {
    int max_iterations = 5;    // planning loop and ReAct bound
    int max_subquestions = 8;  // parallel decomposition cap
    SearchDepth search_depth = SearchDepth::advanced;
    SearchTopic search_topic = SearchTopic::general;
    int max_results = 5;
    bool concurrent_subsearches = true;
};

/// Everything an agent run needs: gateways, templates and configuration.
struct RunContext {
    LlmGateway& llm;
    SearchGateway& search;
    const TemplateSet& templates;
    EngineConfig config;
    Clock clock;

    SearchRequest make_request(const std::string& query) const {
        return SearchRequest{query, config.search_depth, config.search_topic,
                             config.max_results};
    }
};

struct AgentAnswer {
    std::string answer;
    Transcript transcript;
};

}  // namespace srsa
