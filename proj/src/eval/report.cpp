#include "srsa/eval/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "srsa/protocol/parsers.hpp"

namespace srsa {

namespace {

std::string fmt(double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
    return buf;
}

std::vector<double> metric_samples(const std::vector<QuestionScores>& questions,
                                   const std::string& agent, const std::string& metric) {
    std::vector<double> out;
    for (const auto& q : questions) {
        auto it = q.by_agent.find(agent);
        if (it != q.by_agent.end()) out.push_back(it->second.metric(metric));
    }
    return out;
}

}  // namespace

ReportDocument build_report(const std::vector<QuestionScores>& questions,
                            std::size_t unjudged_count,
                            const std::vector<std::string>& compare) {
    std::set<std::string> agent_set;
    for (const auto& q : questions)
        for (const auto& [agent, _] : q.by_agent) agent_set.insert(agent);
    std::vector<std::string> agents;
    if (compare.empty()) {
        agents.assign(agent_set.begin(), agent_set.end());
    } else {
        for (const auto& a : compare)
            if (agent_set.count(a)) agents.push_back(a);
    }

    ReportDocument doc;
    json summary;
    summary["judged_questions"] = questions.size();
    summary["unjudged_questions"] = unjudged_count;

    // per-agent metric means with 95% CI (Student-t quantile)
    std::ostringstream metrics;
    metrics << "agent,metric,mean,ci95_half,n\n";
    json means = json::object();
    for (const auto& agent : agents) {
        for (const auto& metric : judge_metrics()) {
            const auto samples = metric_samples(questions, agent, metric);
            if (samples.size() < 2) continue;
            const auto [mean, half] = mean_ci95(samples);
            metrics << agent << ',' << metric << ',' << fmt(mean) << ',' << fmt(half) << ','
                    << samples.size() << '\n';
            means[agent][metric] = json{{"mean", mean}, {"ci95_half", half}, {"n", samples.size()}};
        }
    }
    doc.metrics_csv = metrics.str();
    summary["metrics"] = means;

    // pairwise Welch t-tests, four rows per pair
    std::ostringstream ttests;
    ttests << "agent_a,agent_b,metric,t_stat,df,p_value,significant\n";
    json tests = json::array();
    for (std::size_t i = 0; i < agents.size(); ++i) {
        for (std::size_t j = i + 1; j < agents.size(); ++j) {
            for (const auto& metric : judge_metrics()) {
                const auto a = metric_samples(questions, agents[i], metric);
                const auto b = metric_samples(questions, agents[j], metric);
                if (a.size() < 2 || b.size() < 2) continue;
                TTestResult r;
                try {
                    r = welch_t(a, b);
                } catch (const StatsError&) {
                    continue;  // both variances zero: no testable difference
                }
                const bool significant = r.p_value < 0.05;
                ttests << agents[i] << ',' << agents[j] << ',' << metric << ','
                       << fmt(r.t_stat) << ',' << fmt(r.df) << ',' << fmt(r.p_value)
                       << (significant ? "*" : "") << ',' << (significant ? "*" : "") << '\n';
                tests.push_back(json{{"agent_a", agents[i]},
                                     {"agent_b", agents[j]},
                                     {"metric", metric},
                                     {"t_stat", r.t_stat},
                                     {"df", r.df},
                                     {"p_value", r.p_value},
                                     {"n1", r.n1},
                                     {"n2", r.n2},
                                     {"significant", significant}});
            }
        }
    }
    doc.ttests_csv = ttests.str();
    summary["ttests"] = tests;

    const WinRateTable table = win_rates(questions);
    std::ostringstream rates;
    rates << "metric,agent,win_rate\n";
    for (const auto& [metric, by_agent] : table.rates)
        for (const auto& [agent, rate] : by_agent)
            rates << metric << ',' << agent << ',' << fmt(rate, 6) << '\n';
    doc.winrates_csv = rates.str();
    summary["win_rates"] = table.rates;

    summary["footnotes"] = json::array(
        {"t-tests applied to raw judge scores; the underlying score distribution is bounded "
         "to [0,5] (truncated-normal assumption).",
         "95% confidence intervals use the Student-t quantile, not the normal quantile.",
         "significance flagged at p < 0.05."});
    doc.summary = std::move(summary);
    return doc;
}

void write_report(const ReportDocument& report, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto write = [&](const char* name, const std::string& content) {
        std::ofstream out(dir / name, std::ios::binary);
        out << content;
    };
    write("metrics.csv", report.metrics_csv);
    write("ttests.csv", report.ttests_csv);
    write("winrates.csv", report.winrates_csv);
    write("summary.json", report.summary.dump(2) + "\n");
}

}  // namespace srsa
