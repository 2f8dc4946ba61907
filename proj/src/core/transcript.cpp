#include "srsa/core/transcript.hpp"

#include <fstream>
#include <stdexcept>

namespace srsa {

std::string to_string(AgentKind k) {
    switch (k) {
        case AgentKind::SRSA: return "srsa";
        case AgentKind::Simple: return "simple";
        case AgentKind::ReAct: return "react";
    }
    return "srsa";
}

std::string to_string(StopReason r) {
    switch (r) {
        case StopReason::completed: return "completed";
        case StopReason::max_iterations: return "max_iterations";
        case StopReason::backend_error: return "backend_error";
    }
    return "completed";
}

AgentKind agent_kind_from_string(const std::string& s) {
    if (s == "srsa") return AgentKind::SRSA;
    if (s == "simple") return AgentKind::Simple;
    if (s == "react") return AgentKind::ReAct;
    throw std::invalid_argument("unknown agent kind: " + s);
}

StopReason stop_reason_from_string(const std::string& s) {
    if (s == "completed") return StopReason::completed;
    if (s == "max_iterations") return StopReason::max_iterations;
    if (s == "backend_error") return StopReason::backend_error;
    throw std::invalid_argument("unknown stop reason: " + s);
}

std::size_t Transcript::count_llm_calls() const {
    std::size_t n = 0;
    for (const auto& e : events)
        if (std::holds_alternative<LlmCallEvent>(e)) ++n;
    return n;
}

std::size_t Transcript::count_search_calls() const {
    std::size_t n = 0;
    for (const auto& e : events)
        if (std::holds_alternative<SearchCallEvent>(e)) ++n;
    return n;
}

namespace {

json event_to_json(const TranscriptEvent& e) {
    return std::visit(
        [](const auto& ev) -> json {
            using T = std::decay_t<decltype(ev)>;
            if constexpr (std::is_same_v<T, LlmCallEvent>) {
                return json{{"type", "llm_call"},
                            {"prompt", ev.prompt},
                            {"params", ev.params},
                            {"completion", ev.completion},
                            {"attempts", ev.attempts}};
            } else if constexpr (std::is_same_v<T, SearchCallEvent>) {
                return json{{"type", "search_call"},
                            {"request", ev.request},
                            {"response", ev.response}};
            } else if constexpr (std::is_same_v<T, ParseEvent>) {
                return json{{"type", "parse"},
                            {"kind", ev.kind},
                            {"raw", ev.raw},
                            {"outcome", ev.outcome}};
            } else {
                return json{{"type", "decision"}, {"kind", ev.kind}, {"payload", ev.payload}};
            }
        },
        e);
}

TranscriptEvent event_from_json(const json& j) {
    const auto type = j.at("type").get<std::string>();
    if (type == "llm_call") {
        LlmCallEvent ev;
        ev.prompt = j.at("prompt").get<PromptText>();
        ev.params = j.at("params").get<GenParams>();
        ev.completion = j.at("completion").get<std::string>();
        ev.attempts = j.at("attempts").get<int>();
        return ev;
    }
    if (type == "search_call") {
        SearchCallEvent ev;
        ev.request = j.at("request").get<SearchRequest>();
        ev.response = j.at("response").get<SearchResponse>();
        return ev;
    }
    if (type == "parse") {
        ParseEvent ev;
        ev.kind = j.at("kind").get<std::string>();
        ev.raw = j.at("raw").get<std::string>();
        ev.outcome = j.at("outcome").get<std::string>();
        return ev;
    }
    if (type == "decision") {
        DecisionEvent ev;
        ev.kind = j.at("kind").get<std::string>();
        ev.payload = j.at("payload");
        return ev;
    }
    throw std::invalid_argument("unknown transcript event type: " + type);
}

}  // namespace

void to_json(json& j, const Transcript& v) {
    json events = json::array();
    for (const auto& e : v.events) events.push_back(event_to_json(e));
    j = json{{"query_id", v.query_id},
             {"agent_kind", to_string(v.agent_kind)},
             {"events", std::move(events)},
             {"final_answer", v.final_answer},
             {"stop_reason", to_string(v.stop_reason)},
             {"template_digest", v.template_digest}};
}

void from_json(const json& j, Transcript& v) {
    v.query_id = j.at("query_id").get<std::string>();
    v.agent_kind = agent_kind_from_string(j.at("agent_kind").get<std::string>());
    v.events.clear();
    for (const auto& e : j.at("events")) v.events.push_back(event_from_json(e));
    v.final_answer = j.at("final_answer").get<std::string>();
    v.stop_reason = stop_reason_from_string(j.at("stop_reason").get<std::string>());
    v.template_digest = j.at("template_digest").get<std::string>();
}

std::filesystem::path save_transcript(const Transcript& t, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto path = dir / (t.query_id + "." + to_string(t.agent_kind) + ".json");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write transcript: " + path.string());
    json j = t;
    out << j.dump(2) << '\n';
    return path;
}

Transcript load_transcript(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read transcript: " + file.string());
    json j = json::parse(in);
    return j.get<Transcript>();
}

}  // namespace srsa
