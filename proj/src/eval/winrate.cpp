#include "srsa/eval/winrate.hpp"

#include <stdexcept>

#include "srsa/protocol/parsers.hpp"

namespace srsa {

WinRateTable win_rates(const std::vector<QuestionScores>& questions) {
    if (questions.empty()) throw std::invalid_argument("win_rates: no judged questions");

    WinRateTable table;
    for (const auto& metric : judge_metrics()) {
        std::map<std::string, double> counts;
        double total = 0.0;
        for (const auto& q : questions) {
            if (q.by_agent.empty()) continue;
            double best = 0.0;
            bool first = true;
            for (const auto& [agent, scores] : q.by_agent) {
                const double v = scores.metric(metric);
                if (first || v > best) best = v;
                first = false;
                counts.try_emplace(agent, 0.0);
            }
            for (const auto& [agent, scores] : q.by_agent) {
                if (scores.metric(metric) == best) {
                    counts[agent] += 1.0;
                    total += 1.0;
                }
            }
        }
        if (total == 0.0) throw std::invalid_argument("win_rates: no judged questions");
        for (auto& [agent, c] : counts) c /= total;
        table.rates[metric] = std::move(counts);
    }
    return table;
}

}  // namespace srsa
