#pragma once

#include <filesystem>

#include "srsa/eval/stats.hpp"
#include "srsa/eval/winrate.hpp"

namespace srsa {

/// Deterministic text + machine-readable report contents. Pairwise t-test
/// rows are flagged with "*" at p < 0.05.
struct ReportDocument {
    std::string metrics_csv;   // agent,metric,mean,ci95_half,n
    std::string ttests_csv;    // agent_a,agent_b,metric,t_stat,df,p_value,significant
    std::string winrates_csv;  // metric,agent,win_rate
    json summary;              // everything above plus footnotes and counts
};

/// Builds the report over judged questions; `compare` optionally restricts
/// the pairwise t-test tables to the named agents (empty = all pairs).
ReportDocument build_report(const std::vector<QuestionScores>& questions,
                            std::size_t unjudged_count,
                            const std::vector<std::string>& compare = {});

/// Writes summary.json, metrics.csv, ttests.csv and winrates.csv into dir.
void write_report(const ReportDocument& report, const std::filesystem::path& dir);

}  // namespace srsa
