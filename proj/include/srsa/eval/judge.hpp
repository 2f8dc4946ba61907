#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srsa/core/transcript.hpp"
#include "srsa/core/types.hpp"
#include "srsa/llm/gateway.hpp"
#include "srsa/protocol/templates.hpp"

namespace srsa {

/// Per-agent scores on the four rubric metrics. Raw judge scores are
/// integers 0-5; values here are averages over the two judging runs, so
/// half-integers occur.
struct JudgeScores {
    double informativeness = 0.0;
    double completeness = 0.0;
    double novelty = 0.0;
    double actionability = 0.0;
    std::map<std::string, std::string> justifications;  // metric -> text

    double metric(const std::string& name) const;
    void set_metric(const std::string& name, double value);

    bool operator==(const JudgeScores&) const = default;
};

void to_json(json& j, const JudgeScores& v);
void from_json(const json& j, JudgeScores& v);

/// One curated judging example: a query, the competing answers and the
/// reference scored output in the judge grammar.
struct JudgeExample {
    std::string query;
    std::map<std::string, std::string> answers;  // agent name -> answer
    std::string scored_output;
};

/// Loads *.json example files from a directory, ordered by filename.
std::vector<JudgeExample> load_example_bank(const std::filesystem::path& dir);

struct JudgeConfig {
    std::uint64_t seed = 0;   // agent-order randomization, recorded per call
    int shots_per_run = 4;    // two runs split the bank into fixed halves
};

/// The judging prompt for one run: rubric system text plus the few-shot
/// examples, the query and the candidate answers in the given agent order.
PromptText render_judge_prompt(const QueryRecord& query,
                               const std::vector<std::pair<std::string, std::string>>& answers,
                               const std::vector<JudgeExample>& shots, const TemplateSet& t);

/// Two independent judging calls with distinct 4-shot prompts covering all
/// bank examples; each run parsed and retried once on parse failure; scores
/// averaged per metric per agent. Returns nullopt when a run fails twice
/// (question unjudged). Agent order is shuffled per call with the seeded RNG
/// and recorded on the transcript.
std::optional<std::map<std::string, JudgeScores>> judge_question(
    const QueryRecord& query, const std::map<std::string, std::string>& answers,
    const std::vector<JudgeExample>& bank, LlmGateway& llm, const TemplateSet& templates,
    const JudgeConfig& config, Transcript& transcript);

}  // namespace srsa
