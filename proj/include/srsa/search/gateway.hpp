#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "srsa/core/transcript.hpp"
#include "srsa/core/types.hpp"
#include "srsa/llm/gateway.hpp"  // GatewayError, Clock

namespace srsa {

/// Web-search interface Search(.). Implementations append one SearchCallEvent
/// per call to the active transcript.
class SearchGateway {
public:
    virtual ~SearchGateway() = default;
    virtual SearchResponse search(const SearchRequest& request, Transcript& transcript) = 0;
};

/// Content-addressed cache key for a search request.
std::string cache_key(const SearchRequest& request);

/// Pure mapping from query string to fixture hits. Unknown queries return an
/// empty hit list, never an error. Hits are truncated to max_results in
/// original order.
class MockSearch : public SearchGateway {
public:
    MockSearch(std::map<std::string, std::vector<SearchHit>> fixtures, Clock clock);

    SearchResponse search(const SearchRequest& request, Transcript& transcript) override;

private:
    std::map<std::string, std::vector<SearchHit>> fixtures_;
    Clock clock_;
};

struct SearchConfig {
    std::string endpoint;  // full search URL
    std::string api_key;
    double timeout_seconds = 30.0;
    int retries = 3;
    double backoff_base_seconds = 0.2;
};

/// Tavily-compatible POST body. Key order is the canonical dump order and is
/// pinned by tests.
std::string build_tavily_body(const SearchRequest& request, const std::string& api_key);

/// HTTP adapter for Tavily-compatible search endpoints.
class HttpSearch : public SearchGateway {
public:
    HttpSearch(SearchConfig config, Clock clock);

    SearchResponse search(const SearchRequest& request, Transcript& transcript) override;

private:
    SearchConfig config_;
    Clock clock_;
};

/// On-disk response cache wrapping any backend: cache/<digest>.json flat
/// files, no TTL. On hit the cached response is returned with
/// from_cache=true and no backend call is made. A SearchCallEvent is appended
/// either way. bypass=true skips both lookup and store.
class CachedSearch : public SearchGateway {
public:
    CachedSearch(std::shared_ptr<SearchGateway> inner, std::filesystem::path cache_dir,
                 bool bypass = false);

    SearchResponse search(const SearchRequest& request, Transcript& transcript) override;

private:
    std::shared_ptr<SearchGateway> inner_;
    std::filesystem::path cache_dir_;
    bool bypass_;
};

}  // namespace srsa
