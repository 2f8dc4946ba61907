#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "srsa/agent/baselines.hpp"
#include "srsa/agent/strategies.hpp"
#include "srsa/data/cqed.hpp"
#include "srsa/eval/judge.hpp"
#include "srsa/eval/report.hpp"
#include "srsa/protocol/parsers.hpp"

namespace {

using namespace srsa;

struct CliError : std::runtime_error {
    int code;
    CliError(const std::string& msg, int c) : std::runtime_error(msg), code(c) {}
};

struct StubScript {
    std::string now = "2024-07-01T00:00:00Z";
    std::vector<std::string> llm;
    std::map<std::string, std::vector<SearchHit>> search;
};

StubScript load_stub_script(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open stub script: " + path);
    json j = json::parse(in);
    StubScript script;
    if (j.contains("now")) script.now = j.at("now").get<std::string>();
    if (j.contains("llm")) script.llm = j.at("llm").get<std::vector<std::string>>();
    if (j.contains("search"))
        script.search = j.at("search").get<std::map<std::string, std::vector<SearchHit>>>();
    return script;
}

struct CommonOpts {
    std::string stub_script;
    std::string out_dir = "runs";
    std::string template_dir;
    std::string config_file;
    bool no_cache = false;
    int max_iter = 5;
};

/// flags > env > config file
std::string resolve(const std::string& flag_value, const char* env_name, const json& config_file,
                    const char* config_key) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv(env_name); env && *env) return env;
    if (config_file.contains(config_key)) return config_file.at(config_key).get<std::string>();
    return "";
}

struct BackendOpts {
    std::string llm_endpoint, llm_api_key, llm_model;
    std::string search_endpoint, search_api_key;
};

struct Backends {
    std::shared_ptr<LlmGateway> llm;
    std::shared_ptr<SearchGateway> search;
    Clock clock;
    std::optional<StubScript> script;  // set in stub mode
    json effective_config;
};

Backends make_backends(const CommonOpts& common, const BackendOpts& flags) {
    Backends b;
    if (!common.stub_script.empty()) {
        auto script = load_stub_script(common.stub_script);
        b.clock = fixed_clock(script.now);
        b.llm = std::make_shared<ScriptedLlm>(script.llm);
        std::shared_ptr<SearchGateway> inner =
            std::make_shared<MockSearch>(script.search, b.clock);
        b.search = common.no_cache
                       ? inner
                       : std::make_shared<CachedSearch>(
                             inner, std::filesystem::path(common.out_dir) / "cache");
        b.script = std::move(script);
        b.effective_config = json{{"mode", "stub"}, {"stub_script", common.stub_script}};
        return b;
    }

    json config_file = json::object();
    if (!common.config_file.empty()) {
        std::ifstream in(common.config_file, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open config file: " + common.config_file);
        config_file = json::parse(in);
    }

    LlmConfig llm;
    llm.endpoint = resolve(flags.llm_endpoint, "LLM_ENDPOINT", config_file, "llm_endpoint");
    llm.api_key = resolve(flags.llm_api_key, "LLM_API_KEY", config_file, "llm_api_key");
    llm.model = resolve(flags.llm_model, "LLM_MODEL", config_file, "llm_model");
    SearchConfig search;
    search.endpoint =
        resolve(flags.search_endpoint, "SEARCH_ENDPOINT", config_file, "search_endpoint");
    search.api_key =
        resolve(flags.search_api_key, "SEARCH_API_KEY", config_file, "search_api_key");

    auto require = [](const std::string& value, const char* what, const char* env_name) {
        if (value.empty())
            throw CliError(std::string("missing ") + what + ": set the " + env_name +
                               " environment variable (or the matching flag/config entry)",
                           2);
    };
    require(llm.endpoint, "LLM endpoint", "LLM_ENDPOINT");
    require(llm.api_key, "LLM API key", "LLM_API_KEY");
    require(llm.model, "LLM model name", "LLM_MODEL");
    require(search.endpoint, "search endpoint", "SEARCH_ENDPOINT");
    require(search.api_key, "search API key", "SEARCH_API_KEY");

    b.clock = system_clock_source();
    b.llm = std::make_shared<HttpLlm>(llm);
    std::shared_ptr<SearchGateway> inner = std::make_shared<HttpSearch>(search, b.clock);
    b.search = common.no_cache ? inner
                               : std::make_shared<CachedSearch>(
                                     inner, std::filesystem::path(common.out_dir) / "cache");
    b.effective_config = json{{"mode", "http"},
                              {"llm_endpoint", llm.endpoint},
                              {"llm_model", llm.model},
                              {"search_endpoint", search.endpoint}};
    return b;
}

TemplateSet make_templates(const CommonOpts& common) {
    return common.template_dir.empty() ? TemplateSet::defaults()
                                       : TemplateSet::load(common.template_dir);
}

AgentAnswer run_agent(const std::string& agent, const QueryRecord& query, RunContext& ctx) {
    if (agent == "srsa") return run_srsa(query, ctx);
    if (agent == "simple") return run_simple(query, ctx);
    if (agent == "react") return run_react(query, ctx);
    throw std::runtime_error("unknown agent: " + agent);
}

void echo_config(const json& effective, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::ofstream out(out_dir / "config.json", std::ios::binary);
    out << effective.dump(2) << '\n';
}

int cmd_ask(const CommonOpts& common, const BackendOpts& backend_opts,
            const std::string& agent, const std::string& query_text, const std::string& query_id,
            bool dry_run) {
    QueryRecord query;
    query.id = query_id.empty() ? "q-" + digest_bytes(query_text).substr(0, 8) : query_id;
    query.text = query_text;

    const TemplateSet templates = make_templates(common);
    if (dry_run) {
        Clock clock = common.stub_script.empty()
                          ? system_clock_source()
                          : fixed_clock(load_stub_script(common.stub_script).now);
        const PromptText prompt = render_router_prompt(query, now_context(clock), templates);
        std::cout << "--- system ---\n" << prompt.system << "\n--- user ---\n" << prompt.user
                  << "\n";
        return 0;
    }

    Backends backends = make_backends(common, backend_opts);
    echo_config(backends.effective_config, common.out_dir);
    EngineConfig config;
    config.max_iterations = common.max_iter;
    RunContext ctx{*backends.llm, *backends.search, templates, config, backends.clock};

    const AgentAnswer result = run_agent(agent, query, ctx);
    const auto path = save_transcript(result.transcript, common.out_dir);
    std::cout << result.answer << "\n\ntranscript: " << path.string() << "\n";
    return result.transcript.stop_reason == StopReason::backend_error ? 1 : 0;
}

int cmd_batch(const CommonOpts& common, const BackendOpts& backend_opts,
              const std::string& dataset_path, std::vector<std::string> agents, int jobs) {
    if (agents.empty()) agents = {"srsa", "simple", "react"};
    const auto records = load_cqed(dataset_path);
    const TemplateSet templates = make_templates(common);

    Backends backends = make_backends(common, backend_opts);
    echo_config(backends.effective_config, common.out_dir);
    EngineConfig config;
    config.max_iterations = common.max_iter;

    struct Task {
        const QueryRecord* record;
        std::string agent;
    };
    std::vector<Task> tasks;
    std::size_t skipped = 0;
    for (const auto& record : records) {
        for (const auto& agent : agents) {
            const auto path =
                std::filesystem::path(common.out_dir) / (record.id + "." + agent + ".json");
            if (std::filesystem::exists(path)) {
                ++skipped;  // resume: completed (record, agent) pairs are kept
                continue;
            }
            tasks.push_back(Task{&record, agent});
        }
    }

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> failures{0};
    std::mutex print_mu;

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& task = tasks[i];
            try {
                // stub mode: every run replays the script from the start so
                // batches stay deterministic under concurrency
                std::shared_ptr<LlmGateway> llm = backends.llm;
                if (backends.script)
                    llm = std::make_shared<ScriptedLlm>(backends.script->llm);
                RunContext ctx{*llm, *backends.search, templates, config, backends.clock};
                const AgentAnswer result = run_agent(task.agent, *task.record, ctx);
                save_transcript(result.transcript, common.out_dir);
                if (result.transcript.stop_reason == StopReason::backend_error)
                    failures.fetch_add(1);
            } catch (const std::exception& e) {
                failures.fetch_add(1);
                std::lock_guard lock(print_mu);
                std::cerr << "run failed (" << task.record->id << ", " << task.agent
                          << "): " << e.what() << "\n";
            }
        }
    };

    std::vector<std::thread> pool;
    for (int i = 0; i < std::max(1, jobs); ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    json summary{{"records", records.size()},
                 {"agents", agents},
                 {"executed", tasks.size()},
                 {"skipped_existing", skipped},
                 {"failures", failures.load()}};
    std::ofstream out(std::filesystem::path(common.out_dir) / "batch_summary.json",
                      std::ios::binary);
    out << summary.dump(2) << '\n';
    std::cout << summary.dump(2) << "\n";
    return failures.load() == 0 ? 0 : 1;
}

int cmd_judge(const CommonOpts& common, const BackendOpts& backend_opts,
              const std::string& run_dir, const std::string& dataset_path,
              const std::string& examples_dir, const std::string& scores_path,
              std::uint64_t seed) {
    const auto records = load_cqed(dataset_path);
    const auto bank = load_example_bank(examples_dir);
    const TemplateSet templates = make_templates(common);
    Backends backends = make_backends(common, backend_opts);

    const std::vector<std::string> agents = {"srsa", "simple", "react"};
    json questions = json::array();
    std::size_t unjudged = 0;
    std::size_t skipped_missing = 0;

    for (const auto& record : records) {
        std::map<std::string, std::string> answers;
        bool complete = true;
        for (const auto& agent : agents) {
            const auto path =
                std::filesystem::path(run_dir) / (record.id + "." + agent + ".json");
            if (!std::filesystem::exists(path)) {
                complete = false;
                break;
            }
            answers[agent] = load_transcript(path).final_answer;
        }
        if (!complete) {
            ++skipped_missing;
            continue;
        }

        std::shared_ptr<LlmGateway> llm = backends.llm;
        if (backends.script) llm = std::make_shared<ScriptedLlm>(backends.script->llm);

        Transcript judge_log;
        judge_log.query_id = record.id;
        JudgeConfig jc;
        jc.seed = seed;
        auto scores = judge_question(record, answers, bank, *llm, templates, jc, judge_log);
        if (!scores) {
            ++unjudged;
            continue;
        }
        json by_agent = json::object();
        for (const auto& [agent, s] : *scores) by_agent[agent] = s;
        questions.push_back(json{{"query_id", record.id}, {"scores", by_agent}});
    }

    json doc{{"questions", questions},
             {"unjudged", unjudged},
             {"skipped_missing_answers", skipped_missing},
             {"seed", seed}};
    std::ofstream out(scores_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write scores file: " + scores_path);
    out << doc.dump(2) << '\n';
    std::cout << "judged " << questions.size() << " questions, " << unjudged << " unjudged, "
              << skipped_missing << " skipped (missing answers)\n";
    return 0;
}

int cmd_report(const std::string& scores_path, const std::string& out_dir,
               const std::vector<std::string>& compare) {
    std::ifstream in(scores_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open scores file: " + scores_path);
    json doc = json::parse(in);

    std::vector<QuestionScores> questions;
    for (const auto& q : doc.at("questions")) {
        QuestionScores qs;
        qs.query_id = q.at("query_id").get<std::string>();
        for (const auto& [agent, s] : q.at("scores").items())
            qs.by_agent[agent] = s.get<JudgeScores>();
        questions.push_back(std::move(qs));
    }
    const std::size_t unjudged = doc.value("unjudged", 0u);

    const ReportDocument report = build_report(questions, unjudged, compare);
    write_report(report, out_dir);
    std::cout << report.ttests_csv << "\nreport written to " << out_dir << "\n";
    return 0;
}

int cmd_cache(const std::string& cache_dir, bool clear) {
    const std::filesystem::path dir(cache_dir);
    if (!std::filesystem::exists(dir)) {
        std::cout << "cache empty (no directory)\n";
        return 0;
    }
    std::size_t files = 0, bytes = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") continue;
        ++files;
        bytes += entry.file_size();
        if (clear) std::filesystem::remove(entry.path());
    }
    std::cout << (clear ? "removed " : "") << files << " cached responses, " << bytes
              << " bytes\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Strategy-router search agent: run, compare and evaluate search agents"};
    app.require_subcommand(1);

    CommonOpts common;
    BackendOpts backend_opts;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--stub-script", common.stub_script,
                        "JSON script for the deterministic LLM stub + mock search");
        cmd->add_option("--out", common.out_dir, "output directory for transcripts");
        cmd->add_option("--template-dir", common.template_dir, "prompt template overrides");
        cmd->add_option("--config", common.config_file, "JSON config file");
        cmd->add_flag("--no-cache", common.no_cache, "bypass the search response cache");
        cmd->add_option("--max-iter", common.max_iter, "planning/ReAct iteration bound");
        cmd->add_option("--llm-endpoint", backend_opts.llm_endpoint, "chat-completions URL");
        cmd->add_option("--llm-api-key", backend_opts.llm_api_key, "LLM API key");
        cmd->add_option("--llm-model", backend_opts.llm_model, "LLM model name");
        cmd->add_option("--search-endpoint", backend_opts.search_endpoint, "search URL");
        cmd->add_option("--search-api-key", backend_opts.search_api_key, "search API key");
    };

    // ask
    std::string agent = "srsa", query_text, query_id;
    bool dry_run = false;
    auto* ask = app.add_subcommand("ask", "run one query through an agent");
    ask->add_option("--agent", agent, "srsa|simple|react")
        ->check(CLI::IsMember({"srsa", "simple", "react"}));
    ask->add_option("query", query_text, "the contextual user query")->required();
    ask->add_option("--id", query_id, "query id (default: derived from the text)");
    ask->add_flag("--dry-run", dry_run, "print the rendered router prompt and exit");
    add_common(ask);

    // batch
    std::string dataset_path;
    std::vector<std::string> agents;
    int jobs = 4;
    auto* batch = app.add_subcommand("batch", "run a dataset through agents");
    batch->add_option("--dataset", dataset_path, "CQED JSONL file")->required();
    batch->add_option("--agents", agents, "agents to run (default: all three)");
    batch->add_option("--jobs", jobs, "concurrent runs");
    add_common(batch);

    // judge
    std::string run_dir = "runs", examples_dir, scores_path = "scores.json";
    std::uint64_t seed = 0;
    auto* judge = app.add_subcommand("judge", "LLM-judge collected answers");
    judge->add_option("--run-dir", run_dir, "directory of transcripts");
    judge->add_option("--dataset", dataset_path, "CQED JSONL file")->required();
    judge->add_option("--examples", examples_dir, "judging example bank directory")->required();
    judge->add_option("--scores", scores_path, "output scores file");
    judge->add_option("--seed", seed, "agent-order randomization seed");
    add_common(judge);

    // report
    std::string report_dir = "report";
    std::vector<std::string> compare;
    auto* report = app.add_subcommand("report", "emit statistics report from scores");
    report->add_option("--scores", scores_path, "scores file from `judge`");
    report->add_option("--out", report_dir, "report output directory");
    report->add_option("--compare", compare, "restrict t-tests to these agents");

    // cache
    std::string cache_dir = "runs/cache";
    bool clear = false;
    auto* cache = app.add_subcommand("cache", "inspect or clear the search cache");
    cache->add_option("--cache-dir", cache_dir, "cache directory");
    cache->add_flag("--clear", clear, "remove cached responses");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ask) return cmd_ask(common, backend_opts, agent, query_text, query_id, dry_run);
        if (*batch) return cmd_batch(common, backend_opts, dataset_path, agents, jobs);
        if (*judge)
            return cmd_judge(common, backend_opts, run_dir, dataset_path, examples_dir,
                             scores_path, seed);
        if (*report) return cmd_report(scores_path, report_dir, compare);
        if (*cache) return cmd_cache(cache_dir, clear);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
