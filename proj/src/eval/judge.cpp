#include "srsa/eval/judge.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "srsa/protocol/parsers.hpp"

namespace srsa {

double JudgeScores::metric(const std::string& name) const {
    if (name == "informativeness") return informativeness;
    if (name == "completeness") return completeness;
    if (name == "novelty") return novelty;
    if (name == "actionability") return actionability;
    throw std::invalid_argument("unknown metric: " + name);
}

void JudgeScores::set_metric(const std::string& name, double value) {
    if (name == "informativeness") informativeness = value;
    else if (name == "completeness") completeness = value;
    else if (name == "novelty") novelty = value;
    else if (name == "actionability") actionability = value;
    else throw std::invalid_argument("unknown metric: " + name);
}

void to_json(json& j, const JudgeScores& v) {
    j = json{{"informativeness", v.informativeness},
             {"completeness", v.completeness},
             {"novelty", v.novelty},
             {"actionability", v.actionability},
             {"justifications", v.justifications}};
}

void from_json(const json& j, JudgeScores& v) {
    v.informativeness = j.at("informativeness").get<double>();
    v.completeness = j.at("completeness").get<double>();
    v.novelty = j.at("novelty").get<double>();
    v.actionability = j.at("actionability").get<double>();
    if (j.contains("justifications"))
        v.justifications = j.at("justifications").get<std::map<std::string, std::string>>();
}

std::vector<JudgeExample> load_example_bank(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::vector<JudgeExample> bank;
    for (const auto& f : files) {
        std::ifstream in(f, std::ios::binary);
        json j = json::parse(in);
        JudgeExample ex;
        ex.query = j.at("query").get<std::string>();
        ex.answers = j.at("answers").get<std::map<std::string, std::string>>();
        ex.scored_output = j.at("scored_output").get<std::string>();
        bank.push_back(std::move(ex));
    }
    return bank;
}

PromptText render_judge_prompt(const QueryRecord& query,
                               const std::vector<std::pair<std::string, std::string>>& answers,
                               const std::vector<JudgeExample>& shots, const TemplateSet& t) {
    std::ostringstream user;
    int n = 1;
    for (const auto& ex : shots) {
        user << "### Example " << n++ << "\nQuery:\n" << ex.query << "\n\n";
        for (const auto& [agent, answer] : ex.answers)
            user << "Answer of " << agent << ":\n" << answer << "\n\n";
        user << "Scored output:\n" << ex.scored_output << "\n\n";
    }
    user << "### Your turn\nQuery:\n" << query.text << "\n\n";
    for (const auto& [agent, answer] : answers)
        user << "Answer of " << agent << ":\n" << answer << "\n\n";
    user << "Scored output:\n";
    return {t.judge, user.str()};
}

std::optional<std::map<std::string, JudgeScores>> judge_question(
    const QueryRecord& query, const std::map<std::string, std::string>& answers,
    const std::vector<JudgeExample>& bank, LlmGateway& llm, const TemplateSet& templates,
    const JudgeConfig& config, Transcript& transcript) {
    if (bank.size() < std::size_t(2 * config.shots_per_run))
        throw std::invalid_argument("example bank too small: need at least " +
                                    std::to_string(2 * config.shots_per_run));

    std::mt19937_64 rng(config.seed);

    // accumulate per-run integer scores, then average
    std::map<std::string, std::map<std::string, std::vector<int>>> collected;
    std::map<std::string, std::map<std::string, std::string>> justifications;

    for (int run = 0; run < 2; ++run) {
        // fixed halves of the bank: all examples are used across the 2 runs
        std::vector<JudgeExample> shots(bank.begin() + run * config.shots_per_run,
                                        bank.begin() + (run + 1) * config.shots_per_run);

        std::vector<std::pair<std::string, std::string>> ordered(answers.begin(), answers.end());
        std::shuffle(ordered.begin(), ordered.end(), rng);
        {
            json order = json::array();
            for (const auto& [agent, _] : ordered) order.push_back(agent);
            transcript.events.push_back(DecisionEvent{
                "judge_agent_order",
                json{{"run", run}, {"seed", config.seed}, {"order", order}}});
        }

        const PromptText prompt = render_judge_prompt(query, ordered, shots, templates);

        bool parsed = false;
        for (int attempt = 0; attempt < 2 && !parsed; ++attempt) {
            const std::string completion = llm.generate(prompt, GenParams{}, transcript);
            auto outcome = parse_judge_scores(completion);
            transcript.events.push_back(
                ParseEvent{"judge_scores", completion, outcome.ok() ? "ok" : outcome.reason});
            if (!outcome.ok()) continue;

            // the parsed blocks must cover exactly the judged agents
            bool covered = outcome.value->size() == answers.size();
            for (const auto& [agent, _] : answers)
                covered = covered && outcome.value->count(to_lower(agent)) > 0;
            if (!covered) {
                transcript.events.push_back(DecisionEvent{
                    "judge_agent_mismatch", json{{"run", run}}});
                continue;
            }

            for (const auto& [agent, block] : *outcome.value) {
                for (const auto& metric : judge_metrics()) {
                    collected[agent][metric].push_back(block.scores.at(metric));
                    const auto& just = block.justifications.at(metric);
                    if (!just.empty()) justifications[agent][metric] = just;
                }
            }
            parsed = true;
        }
        if (!parsed) {
            transcript.events.push_back(
                DecisionEvent{"question_unjudged", json{{"run", run}}});
            return std::nullopt;
        }
    }

    std::map<std::string, JudgeScores> result;
    for (const auto& [agent, metrics] : collected) {
        JudgeScores scores;
        for (const auto& [metric, values] : metrics) {
            double sum = 0.0;
            for (int v : values) sum += v;
            scores.set_metric(metric, sum / double(values.size()));
        }
        scores.justifications = justifications[agent];
        result[agent] = std::move(scores);
    }
    return result;
}

}  // namespace srsa
