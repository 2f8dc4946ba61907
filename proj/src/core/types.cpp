#include "srsa/core/types.hpp"

#include <stdexcept>

namespace srsa {

std::string to_string(Domain d) {
    switch (d) {
        case Domain::shopping: return "shopping";
        case Domain::research: return "research";
        case Domain::travel: return "travel";
        case Domain::digital_devices: return "digital_devices";
        case Domain::other: return "other";
    }
    return "other";
}

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::Direct: return "direct";
        case Strategy::Parallel: return "parallel";
        case Strategy::Planning: return "planning";
    }
    return "direct";
}

std::string to_string(SearchDepth d) {
    return d == SearchDepth::basic ? "basic" : "advanced";
}

std::string to_string(SearchTopic t) {
    return t == SearchTopic::news ? "news" : "general";
}

Domain domain_from_string(const std::string& s) {
    if (s == "shopping") return Domain::shopping;
    if (s == "research") return Domain::research;
    if (s == "travel") return Domain::travel;
    if (s == "digital_devices") return Domain::digital_devices;
    if (s == "other") return Domain::other;
    throw std::invalid_argument("unknown domain tag: " + s);
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "direct") return Strategy::Direct;
    if (s == "parallel") return Strategy::Parallel;
    if (s == "planning") return Strategy::Planning;
    throw std::invalid_argument("unknown strategy: " + s);
}

SearchDepth depth_from_string(const std::string& s) {
    if (s == "basic") return SearchDepth::basic;
    if (s == "advanced") return SearchDepth::advanced;
    throw std::invalid_argument("unknown search depth: " + s);
}

SearchTopic topic_from_string(const std::string& s) {
    if (s == "general") return SearchTopic::general;
    if (s == "news") return SearchTopic::news;
    throw std::invalid_argument("unknown search topic: " + s);
}

void to_json(json& j, const QueryRecord& v) {
    j = json{{"id", v.id}, {"domain", to_string(v.domain)}, {"text", v.text}};
    if (v.asked_at) j["asked_at"] = *v.asked_at;
}

void from_json(const json& j, QueryRecord& v) {
    v.id = j.at("id").get<std::string>();
    v.domain = domain_from_string(j.at("domain").get<std::string>());
    v.text = j.at("text").get<std::string>();
    if (j.contains("asked_at")) v.asked_at = j.at("asked_at").get<std::string>();
    else v.asked_at.reset();
}

void to_json(json& j, const StrategyChoice& v) {
    j = json{{"strategy", to_string(v.strategy)},
             {"suggestions", v.suggestions},
             {"fallback_applied", v.fallback_applied}};
}

void from_json(const json& j, StrategyChoice& v) {
    v.strategy = strategy_from_string(j.at("strategy").get<std::string>());
    v.suggestions = j.at("suggestions").get<std::string>();
    v.fallback_applied = j.at("fallback_applied").get<bool>();
}

void to_json(json& j, const SearchRequest& v) {
    j = json{{"query", v.query},
             {"depth", to_string(v.depth)},
             {"topic", to_string(v.topic)},
             {"max_results", v.max_results}};
}

void from_json(const json& j, SearchRequest& v) {
    v.query = j.at("query").get<std::string>();
    v.depth = depth_from_string(j.at("depth").get<std::string>());
    v.topic = topic_from_string(j.at("topic").get<std::string>());
    v.max_results = j.at("max_results").get<int>();
}

void to_json(json& j, const SearchHit& v) {
    j = json{{"title", v.title}, {"url", v.url}, {"content", v.content}, {"score", v.score}};
}

void from_json(const json& j, SearchHit& v) {
    v.title = j.at("title").get<std::string>();
    v.url = j.at("url").get<std::string>();
    v.content = j.at("content").get<std::string>();
    v.score = j.at("score").get<double>();
}

void to_json(json& j, const SearchResponse& v) {
    j = json{{"request_digest", v.request_digest},
             {"hits", v.hits},
             {"answered_at", v.answered_at},
             {"from_cache", v.from_cache}};
}

void from_json(const json& j, SearchResponse& v) {
    v.request_digest = j.at("request_digest").get<std::string>();
    v.hits = j.at("hits").get<std::vector<SearchHit>>();
    v.answered_at = j.at("answered_at").get<std::string>();
    v.from_cache = j.at("from_cache").get<bool>();
}

void to_json(json& j, const DocSection& v) {
    j = json{{"label", v.label}, {"hits", v.hits}};
    if (v.summary) j["summary"] = *v.summary;
}

void from_json(const json& j, DocSection& v) {
    v.label = j.at("label").get<std::string>();
    v.hits = j.at("hits").get<std::vector<SearchHit>>();
    if (j.contains("summary")) v.summary = j.at("summary").get<std::string>();
    else v.summary.reset();
}

void to_json(json& j, const SupportingDocuments& v) {
    j = json{{"sections", v.sections}};
}

void from_json(const json& j, SupportingDocuments& v) {
    v.sections = j.at("sections").get<std::vector<DocSection>>();
}

void to_json(json& j, const GenParams& v) {
    j = json{{"temperature", v.temperature}, {"n_responses", v.n_responses}};
    if (v.max_tokens) j["max_tokens"] = *v.max_tokens;
}

void from_json(const json& j, GenParams& v) {
    v.temperature = j.at("temperature").get<double>();
    v.n_responses = j.at("n_responses").get<int>();
    if (j.contains("max_tokens")) v.max_tokens = j.at("max_tokens").get<int>();
    else v.max_tokens.reset();
}

void to_json(json& j, const PromptText& v) {
    j = json{{"system", v.system}, {"user", v.user}};
}

void from_json(const json& j, PromptText& v) {
    v.system = j.at("system").get<std::string>();
    v.user = j.at("user").get<std::string>();
}

void to_json(json& j, const TimeContext& v) {
    j = json{{"date", v.date}, {"weekday", v.weekday}, {"timezone_label", v.timezone_label}};
}

void from_json(const json& j, TimeContext& v) {
    v.date = j.at("date").get<std::string>();
    v.weekday = j.at("weekday").get<std::string>();
    v.timezone_label = j.at("timezone_label").get<std::string>();
}

std::string digest_bytes(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace srsa
