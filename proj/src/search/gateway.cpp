#include "srsa/search/gateway.hpp"

#include <fstream>
#include <thread>

#include <httplib.h>

namespace srsa {

std::string cache_key(const SearchRequest& request) {
    return content_digest(request);
}

MockSearch::MockSearch(std::map<std::string, std::vector<SearchHit>> fixtures, Clock clock)
    : fixtures_(std::move(fixtures)), clock_(std::move(clock)) {}

SearchResponse MockSearch::search(const SearchRequest& request, Transcript& transcript) {
    SearchResponse response;
    response.request_digest = cache_key(request);
    response.answered_at = iso_instant(clock_());
    response.from_cache = false;
    if (auto it = fixtures_.find(request.query); it != fixtures_.end()) {
        response.hits = it->second;
        if (response.hits.size() > std::size_t(request.max_results))
            response.hits.resize(std::size_t(request.max_results));
    }
    transcript.events.push_back(SearchCallEvent{request, response});
    return response;
}

std::string build_tavily_body(const SearchRequest& request, const std::string& api_key) {
    json body{{"query", request.query},
              {"search_depth", to_string(request.depth)},
              {"topic", to_string(request.topic)},
              {"max_results", request.max_results},
              {"api_key", api_key}};
    return body.dump();
}

namespace {

std::pair<std::string, std::string> split_url(const std::string& url) {
    auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw std::invalid_argument("endpoint URL missing scheme: " + url);
    auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

HttpSearch::HttpSearch(SearchConfig config, Clock clock)
    : config_(std::move(config)), clock_(std::move(clock)) {}

SearchResponse HttpSearch::search(const SearchRequest& request, Transcript& transcript) {
    auto [base, path] = split_url(config_.endpoint);
    const std::string body = build_tavily_body(request, config_.api_key);

    int attempts = 0;
    std::string last_error;
    while (attempts < std::max(1, config_.retries)) {
        ++attempts;
        httplib::Client client(base);
        client.set_connection_timeout(std::chrono::duration<double>(config_.timeout_seconds));
        client.set_read_timeout(std::chrono::duration<double>(config_.timeout_seconds));

        auto res = client.Post(path, body, "application/json");
        if (!res) {
            last_error = httplib::to_string(res.error());
            if (attempts < config_.retries) {
                auto delay = config_.backoff_base_seconds * double(1 << (attempts - 1));
                std::this_thread::sleep_for(std::chrono::duration<double>(delay));
                continue;
            }
            throw GatewayError(GatewayError::Kind::backend_unreachable,
                               "search backend unreachable: " + last_error);
        }
        if (res->status == 429 || res->status == 432)
            throw GatewayError(GatewayError::Kind::quota_exhausted,
                               "search quota exhausted (status " + std::to_string(res->status) + ")",
                               res->status);
        if (res->status >= 400)
            throw GatewayError(GatewayError::Kind::backend_rejected,
                               "search backend rejected request (status " +
                                   std::to_string(res->status) + "): " + res->body,
                               res->status);

        SearchResponse response;
        response.request_digest = cache_key(request);
        response.answered_at = iso_instant(clock_());
        response.from_cache = false;
        try {
            json parsed = json::parse(res->body);
            for (const auto& r : parsed.at("results")) {
                SearchHit hit;
                hit.title = r.value("title", "");
                hit.url = r.at("url").get<std::string>();
                hit.content = r.value("content", "");
                hit.score = r.value("score", 0.0);
                response.hits.push_back(std::move(hit));
                if (response.hits.size() == std::size_t(request.max_results)) break;
            }
        } catch (const json::exception& e) {
            throw GatewayError(GatewayError::Kind::malformed_response,
                               std::string("malformed search response: ") + e.what());
        }
        transcript.events.push_back(SearchCallEvent{request, response});
        return response;
    }
    throw GatewayError(GatewayError::Kind::backend_unreachable,
                       "search backend unreachable: " + last_error);
}

CachedSearch::CachedSearch(std::shared_ptr<SearchGateway> inner, std::filesystem::path cache_dir,
                           bool bypass)
    : inner_(std::move(inner)), cache_dir_(std::move(cache_dir)), bypass_(bypass) {}

SearchResponse CachedSearch::search(const SearchRequest& request, Transcript& transcript) {
    const auto key = cache_key(request);
    const auto file = cache_dir_ / (key + ".json");

    if (!bypass_ && std::filesystem::exists(file)) {
        std::ifstream in(file, std::ios::binary);
        json j = json::parse(in);
        auto response = j.get<SearchResponse>();
        response.from_cache = true;
        transcript.events.push_back(SearchCallEvent{request, response});
        return response;
    }

    auto response = inner_->search(request, transcript);
    if (!bypass_) {
        std::filesystem::create_directories(cache_dir_);
        // concurrent identical misses: last write wins, responses for the
        // same key are interchangeable
        std::ofstream out(file, std::ios::binary);
        json j = response;
        out << j.dump(2) << '\n';
    }
    return response;
}

}  // namespace srsa
