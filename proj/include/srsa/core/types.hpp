#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace srsa {

using json = nlohmann::json;

enum class Domain { shopping, research, travel, digital_devices, other };

struct QueryRecord {
    std::string id;
    Domain domain = Domain::other;
    std::string text;
    std::optional<std::string> asked_at;  // ISO-8601 text, never a native time type

    bool operator==(const QueryRecord&) const = default;
};

enum class Strategy { Direct, Parallel, Planning };

struct StrategyChoice {
    Strategy strategy = Strategy::Direct;
    std::string suggestions;        // free-text overview suggestions, may be empty
    bool fallback_applied = false;  // true => strategy is Direct

    bool operator==(const StrategyChoice&) const = default;
};

enum class SearchDepth { basic, advanced };
enum class SearchTopic { general, news };

struct SearchRequest {
    std::string query;
    SearchDepth depth = SearchDepth::advanced;
    SearchTopic topic = SearchTopic::general;
    int max_results = 5;

    bool operator==(const SearchRequest&) const = default;
};

struct SearchHit {
    std::string title;
    std::string url;
    std::string content;
    double score = 0.0;  // backend relevance in [0,1]

    bool operator==(const SearchHit&) const = default;
};

struct SearchResponse {
    std::string request_digest;
    std::vector<SearchHit> hits;  // |hits| <= request.max_results, backend order
    std::string answered_at;      // ISO-8601
    bool from_cache = false;

    bool operator==(const SearchResponse&) const = default;
};

/// One labelled section of supporting documents: either search hits or a
/// summary text, never both.
struct DocSection {
    std::string label;  // provenance, e.g. "sub-question 2" or "iteration 3 summary"
    std::vector<SearchHit> hits;
    std::optional<std::string> summary;

    bool operator==(const DocSection&) const = default;
};

struct SupportingDocuments {
    std::vector<DocSection> sections;

    bool operator==(const SupportingDocuments&) const = default;
};

struct GenParams {
    double temperature = 0.0;
    int n_responses = 1;
    std::optional<int> max_tokens;  // absent = backend context-window default

    bool operator==(const GenParams&) const = default;
};

struct PromptText {
    std::string system;  // the fixed prompt
    std::string user;    // the variable inputs

    bool operator==(const PromptText&) const = default;
};

struct TimeContext {
    std::string date;     // ISO-8601 date
    std::string weekday;  // English weekday name
    std::string timezone_label;

    bool operator==(const TimeContext&) const = default;
};

// enum <-> string names (canonical serialization uses these)
std::string to_string(Domain d);
std::string to_string(Strategy s);
std::string to_string(SearchDepth d);
std::string to_string(SearchTopic t);
Domain domain_from_string(const std::string& s);
Strategy strategy_from_string(const std::string& s);
SearchDepth depth_from_string(const std::string& s);
SearchTopic topic_from_string(const std::string& s);

// nlohmann ADL hooks
void to_json(json& j, const QueryRecord& v);
void from_json(const json& j, QueryRecord& v);
void to_json(json& j, const StrategyChoice& v);
void from_json(const json& j, StrategyChoice& v);
void to_json(json& j, const SearchRequest& v);
void from_json(const json& j, SearchRequest& v);
void to_json(json& j, const SearchHit& v);
void from_json(const json& j, SearchHit& v);
void to_json(json& j, const SearchResponse& v);
void from_json(const json& j, SearchResponse& v);
void to_json(json& j, const DocSection& v);
void from_json(const json& j, DocSection& v);
void to_json(json& j, const SupportingDocuments& v);
void from_json(const json& j, SupportingDocuments& v);
void to_json(json& j, const GenParams& v);
void from_json(const json& j, GenParams& v);
void to_json(json& j, const PromptText& v);
void from_json(const json& j, PromptText& v);
void to_json(json& j, const TimeContext& v);
void from_json(const json& j, TimeContext& v);

/// Deterministic byte encoding: JSON with lexicographically ordered keys,
/// no whitespace, no encoding-time timestamps.
template <typename T>
std::string canonical_bytes(const T& value) {
    json j = value;
    return j.dump();
}

/// FNV-1a 64-bit over raw bytes, rendered as 16 lowercase hex chars.
std::string digest_bytes(std::string_view bytes);

/// Stable content hash of a core type; equal values yield equal digests.
template <typename T>
std::string content_digest(const T& value) {
    return digest_bytes(canonical_bytes(value));
}

}  // namespace srsa
