#include "srsa/llm/gateway.hpp"

#include <cstdio>
#include <thread>

#include <httplib.h>

namespace srsa {

namespace {

constexpr const char* kWeekdayNames[7] = {"Sunday",   "Monday", "Tuesday", "Wednesday",
                                          "Thursday", "Friday", "Saturday"};

std::chrono::system_clock::time_point parse_iso_instant(const std::string& s) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    int n = std::sscanf(s.c_str(), "%d-%d-%dT%d:%d:%d", &y, &mo, &d, &h, &mi, &sec);
    if (n < 3) throw std::invalid_argument("bad ISO-8601 instant: " + s);
    using namespace std::chrono;
    sys_days days = year{y} / mo / d;
    return days + hours{h} + minutes{mi} + seconds{sec};
}

}  // namespace

Clock system_clock_source() {
    return [] { return std::chrono::system_clock::now(); };
}

Clock fixed_clock(const std::string& iso_instant) {
    auto tp = parse_iso_instant(iso_instant);
    return [tp] { return tp; };
}

std::string iso_instant(std::chrono::system_clock::time_point tp) {
    using namespace std::chrono;
    auto days = floor<std::chrono::days>(tp);
    year_month_day ymd{days};
    hh_mm_ss tod{floor<seconds>(tp - days)};
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02ld:%02ld:%02ldZ", int(ymd.year()),
                  unsigned(ymd.month()), unsigned(ymd.day()), long(tod.hours().count()),
                  long(tod.minutes().count()), long(tod.seconds().count()));
    return buf;
}

TimeContext now_context(const Clock& clock) {
    using namespace std::chrono;
    auto tp = clock();
    auto days = floor<std::chrono::days>(tp);
    year_month_day ymd{days};
    weekday wd{days};
    char date[16];
    std::snprintf(date, sizeof(date), "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    TimeContext ctx;
    ctx.date = date;
    ctx.weekday = kWeekdayNames[wd.c_encoding()];
    ctx.timezone_label = "UTC";
    return ctx;
}

ScriptedLlm::ScriptedLlm(std::vector<std::string> completions, bool record_prompts)
    : queue_(completions.begin(), completions.end()), record_prompts_(record_prompts) {}

std::string ScriptedLlm::generate(const PromptText& prompt, const GenParams& params,
                                  Transcript& transcript) {
    std::string completion;
    {
        std::lock_guard lock(mu_);
        if (record_prompts_) seen_.push_back(prompt);
        if (queue_.empty())
            throw GatewayError(GatewayError::Kind::empty_completion, "stub exhausted");
        completion = std::move(queue_.front());
        queue_.pop_front();
    }
    transcript.events.push_back(LlmCallEvent{prompt, params, completion, 1});
    return completion;
}

std::size_t ScriptedLlm::remaining() const {
    std::lock_guard lock(mu_);
    return queue_.size();
}

std::string build_chat_body(const PromptText& prompt, const GenParams& params,
                            const std::string& model) {
    json body{{"model", model},
              {"messages",
               json::array({json{{"role", "system"}, {"content", prompt.system}},
                            json{{"role", "user"}, {"content", prompt.user}}})},
              {"temperature", params.temperature},
              {"n", params.n_responses}};
    if (params.max_tokens) body["max_tokens"] = *params.max_tokens;
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

HttpLlm::HttpLlm(LlmConfig config) : config_(std::move(config)) {}

std::string HttpLlm::generate(const PromptText& prompt, const GenParams& params,
                              Transcript& transcript) {
    auto [base, path] = split_url(config_.endpoint);
    const std::string body = build_chat_body(prompt, params, config_.model);

    int attempts = 0;
    std::string last_error;
    while (attempts < std::max(1, config_.retries)) {
        ++attempts;
        httplib::Client client(base);
        client.set_connection_timeout(std::chrono::duration<double>(config_.timeout_seconds));
        client.set_read_timeout(std::chrono::duration<double>(config_.timeout_seconds));
        httplib::Headers headers;
        if (!config_.api_key.empty())
            headers.emplace("Authorization", "Bearer " + config_.api_key);

        auto res = client.Post(path, headers, body, "application/json");
        if (!res) {
            last_error = httplib::to_string(res.error());
            if (attempts < config_.retries) {
                auto delay = config_.backoff_base_seconds * double(1 << (attempts - 1));
                std::this_thread::sleep_for(std::chrono::duration<double>(delay));
                continue;
            }
            throw GatewayError(GatewayError::Kind::backend_unreachable,
                               "LLM backend unreachable: " + last_error);
        }
        if (res->status >= 400)
            throw GatewayError(GatewayError::Kind::backend_rejected,
                               "LLM backend rejected request (status " +
                                   std::to_string(res->status) + "): " + res->body,
                               res->status);

        std::string completion;
        try {
            json parsed = json::parse(res->body);
            completion = parsed.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const json::exception& e) {
            throw GatewayError(GatewayError::Kind::malformed_response,
                               std::string("malformed chat-completions response: ") + e.what());
        }
        if (completion.empty())
            throw GatewayError(GatewayError::Kind::empty_completion, "backend returned empty completion");

        transcript.events.push_back(LlmCallEvent{prompt, params, completion, attempts});
        return completion;
    }
    throw GatewayError(GatewayError::Kind::backend_unreachable,
                       "LLM backend unreachable: " + last_error);
}

}  // namespace srsa
