#include <doctest.h>

#include <thread>

#include <httplib.h>

#include "srsa/search/gateway.hpp"

using namespace srsa;

TEST_CASE("now_context from a fixed clock") {
    auto clock = fixed_clock("2024-07-01T00:00:00Z");
    auto ctx = now_context(clock);
    CHECK(ctx.date == "2024-07-01");
    CHECK(ctx.weekday == "Monday");
    CHECK(now_context(clock) == ctx);

    CHECK(now_context(fixed_clock("2024-02-29T12:00:00Z")).weekday == "Thursday");
}

TEST_CASE("scripted stub is a pure FIFO dequeue") {
    ScriptedLlm stub({"hello", "world"});
    Transcript t;
    CHECK(stub.generate({"sys", "anything"}, GenParams{}, t) == "hello");
    CHECK(stub.generate({"other", "prompt"}, GenParams{}, t) == "world");
    CHECK(t.count_llm_calls() == 2);

    CHECK_THROWS_WITH_AS(stub.generate({"s", "u"}, GenParams{}, t), "stub exhausted",
                         GatewayError);
}

TEST_CASE("scripted stub records prompts when asked") {
    ScriptedLlm stub({"a"}, true);
    Transcript t;
    stub.generate({"system text", "user text"}, GenParams{}, t);
    REQUIRE(stub.recorded_prompts().size() == 1);
    CHECK(stub.recorded_prompts()[0].system == "system text");
}

TEST_CASE("chat body carries temperature 0 and n 1 by default") {
    auto body = json::parse(build_chat_body({"s", "u"}, GenParams{}, "test-model"));
    CHECK(body.at("temperature").get<double>() == 0.0);
    CHECK(body.at("n").get<int>() == 1);
    CHECK_FALSE(body.contains("max_tokens"));  // backend context-window default
    CHECK(body.at("messages")[0].at("role") == "system");
    CHECK(body.at("messages")[1].at("role") == "user");
}

TEST_CASE("mock search truncates to max_results in original order") {
    std::vector<SearchHit> hits;
    for (int i = 0; i < 7; ++i)
        hits.push_back({"t" + std::to_string(i), "u" + std::to_string(i), "c", 0.5});
    MockSearch mock({{"q", hits}}, fixed_clock("2024-07-01T00:00:00Z"));

    Transcript t;
    auto response = mock.search(SearchRequest{"q", SearchDepth::advanced, SearchTopic::general, 5}, t);
    REQUIRE(response.hits.size() == 5);
    CHECK(response.hits[0].title == "t0");
    CHECK(response.hits[4].title == "t4");
    CHECK(t.count_search_calls() == 1);
}

TEST_CASE("mock search returns empty hits for unknown queries") {
    MockSearch mock({}, fixed_clock("2024-07-01T00:00:00Z"));
    Transcript t;
    auto response = mock.search(SearchRequest{"unknown", SearchDepth::advanced, SearchTopic::general, 5}, t);
    CHECK(response.hits.empty());
    CHECK_FALSE(response.from_cache);
}

TEST_CASE("cache returns identical hits with from_cache=true and no backend call") {
    auto dir = std::filesystem::temp_directory_path() / "srsa_cache_test";
    std::filesystem::remove_all(dir);

    auto mock = std::make_shared<MockSearch>(
        std::map<std::string, std::vector<SearchHit>>{{"q", {{"t", "u", "c", 0.9}}}},
        fixed_clock("2024-07-01T00:00:00Z"));
    CachedSearch cached(mock, dir);

    Transcript t;
    SearchRequest request{"q", SearchDepth::advanced, SearchTopic::general, 5};
    auto first = cached.search(request, t);
    CHECK_FALSE(first.from_cache);
    auto second = cached.search(request, t);
    CHECK(second.from_cache);
    CHECK(second.hits == first.hits);
    CHECK(t.count_search_calls() == 2);  // one event either way

    // warm-cache soundness even against a now-empty backend
    CachedSearch rewarmed(std::make_shared<MockSearch>(
                              std::map<std::string, std::vector<SearchHit>>{},
                              fixed_clock("2024-07-01T00:00:00Z")),
                          dir);
    auto third = rewarmed.search(request, t);
    CHECK(third.from_cache);
    CHECK(third.hits == first.hits);
    std::filesystem::remove_all(dir);
}

TEST_CASE("cache_key matches content_digest and is stable") {
    SearchRequest a{"q", SearchDepth::advanced, SearchTopic::general, 5};
    SearchRequest b = a;
    b.topic = SearchTopic::news;
    CHECK(cache_key(a) == content_digest(a));
    CHECK(cache_key(a) != cache_key(b));
}

TEST_CASE("tavily body uses the pinned default parameters") {
    SearchRequest r{"best laptops", SearchDepth::advanced, SearchTopic::general, 5};
    auto body = json::parse(build_tavily_body(r, "KEY"));
    CHECK(body.at("search_depth") == "advanced");
    CHECK(body.at("topic") == "general");
    CHECK(body.at("max_results") == 5);
    CHECK(body.at("query") == "best laptops");
    CHECK(body.at("api_key") == "KEY");
}

TEST_CASE("HTTP adapters against a local server") {
    httplib::Server server;
    int llm_requests = 0;
    json last_chat_body;
    server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
        ++llm_requests;
        last_chat_body = json::parse(req.body);
        json out{{"choices", json::array({json{{"message", json{{"content", "pong"}}}}})}};
        res.set_content(out.dump(), "application/json");
    });
    server.Post("/search", [&](const httplib::Request& req, httplib::Response& res) {
        auto body = json::parse(req.body);
        json out{{"results", json::array({json{{"title", "T"},
                                               {"url", "https://x"},
                                               {"content", body.at("query")},
                                               {"score", 0.7}}})}};
        res.set_content(out.dump(), "application/json");
    });

    const int port = server.bind_to_any_port("127.0.0.1");
    std::thread thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    const std::string base = "http://127.0.0.1:" + std::to_string(port);

    SUBCASE("chat adapter") {
        LlmConfig config;
        config.endpoint = base + "/v1/chat/completions";
        config.api_key = "k";
        config.model = "m";
        config.backoff_base_seconds = 0.0;
        HttpLlm llm(config);
        Transcript t;
        CHECK(llm.generate({"s", "u"}, GenParams{}, t) == "pong");
        CHECK(last_chat_body.at("temperature").get<double>() == 0.0);
        CHECK(last_chat_body.at("n").get<int>() == 1);
        REQUIRE(t.count_llm_calls() == 1);
        CHECK(std::get<LlmCallEvent>(t.events[0]).attempts == 1);
    }

    SUBCASE("search adapter") {
        SearchConfig config;
        config.endpoint = base + "/search";
        config.api_key = "k";
        config.backoff_base_seconds = 0.0;
        HttpSearch search(config, fixed_clock("2024-07-01T00:00:00Z"));
        Transcript t;
        auto response =
            search.search(SearchRequest{"hi", SearchDepth::advanced, SearchTopic::general, 5}, t);
        REQUIRE(response.hits.size() == 1);
        CHECK(response.hits[0].content == "hi");
        CHECK(response.answered_at == "2024-07-01T00:00:00Z");
    }

    SUBCASE("rejected status surfaces as backend_rejected") {
        LlmConfig config;
        config.endpoint = base + "/nowhere";
        config.model = "m";
        config.backoff_base_seconds = 0.0;
        HttpLlm llm(config);
        Transcript t;
        try {
            llm.generate({"s", "u"}, GenParams{}, t);
            FAIL("expected GatewayError");
        } catch (const GatewayError& e) {
            CHECK(e.kind() == GatewayError::Kind::backend_rejected);
            CHECK(e.status() == 404);
        }
    }

    server.stop();
    thread.join();
}

TEST_CASE("unreachable backend is retried then reported") {
    LlmConfig config;
    config.endpoint = "http://127.0.0.1:1/v1/chat/completions";  // nothing listens here
    config.model = "m";
    config.retries = 2;
    config.backoff_base_seconds = 0.0;
    HttpLlm llm(config);
    Transcript t;
    try {
        llm.generate({"s", "u"}, GenParams{}, t);
        FAIL("expected GatewayError");
    } catch (const GatewayError& e) {
        CHECK(e.kind() == GatewayError::Kind::backend_unreachable);
    }
    CHECK(t.count_llm_calls() == 0);
}
