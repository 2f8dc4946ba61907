#pragma once

#include <map>
#include <string>
#include <vector>

#include "srsa/eval/judge.hpp"

namespace srsa {

/// Scores of all agents on one judged question.
struct QuestionScores {
    std::string query_id;
    std::map<std::string, JudgeScores> by_agent;  // agent name -> scores
};

/// metric -> agent name -> win rate in [0,1]; each metric column sums to 1.
struct WinRateTable {
    std::map<std::string, std::map<std::string, double>> rates;
};

/// Per metric and question, every agent attaining the maximum score counts
/// one win; counts are summed over questions and divided by the total count
/// so ties credit all top agents and each column normalizes to 1.
WinRateTable win_rates(const std::vector<QuestionScores>& questions);

}  // namespace srsa
