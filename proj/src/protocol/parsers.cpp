#include "srsa/protocol/parsers.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace srsa {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string to_lower(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return out;
}

namespace {

std::vector<std::string> split_lines(const std::string& raw) {
    std::vector<std::string> lines;
    std::string line;
    std::istringstream in(raw);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

/// If `line` begins with `key` + ':' (case-insensitive, leading whitespace
/// ignored), returns the trimmed remainder of the line.
std::optional<std::string> marker_value(const std::string& line, const std::string& key) {
    const std::string t = trim(line);
    if (t.size() < key.size() + 1) return std::nullopt;
    if (to_lower(t.substr(0, key.size())) != key) return std::nullopt;
    std::size_t pos = key.size();
    while (pos < t.size() && std::isspace(static_cast<unsigned char>(t[pos]))) ++pos;
    if (pos >= t.size() || t[pos] != ':') return std::nullopt;
    return trim(t.substr(pos + 1));
}

std::string strip_trailing_punct(const std::string& s) {
    std::string out = s;
    while (!out.empty() && (out.back() == '.' || out.back() == '!' || out.back() == ','))
        out.pop_back();
    return trim(out);
}

}  // namespace

StrategyChoice parse_router_output(const std::string& raw) {
    const auto lines = split_lines(raw);

    std::optional<Strategy> strategy;
    for (const auto& line : lines) {
        if (auto v = marker_value(line, "strategy")) {
            const std::string value = to_lower(strip_trailing_punct(*v));
            if (value == "direct") strategy = Strategy::Direct;
            else if (value == "parallel") strategy = Strategy::Parallel;
            else if (value == "planning") strategy = Strategy::Planning;
            if (strategy) break;  // first valid line decides
        }
    }
    if (!strategy) return StrategyChoice{Strategy::Direct, "", true};

    // remainder after the first SUGGESTIONS: marker, spanning following lines
    std::string suggestions;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (auto v = marker_value(lines[i], "suggestions")) {
            suggestions = *v;
            for (std::size_t j = i + 1; j < lines.size(); ++j) {
                suggestions += "\n" + lines[j];
            }
            suggestions = trim(suggestions);
            break;
        }
    }
    return StrategyChoice{*strategy, suggestions, false};
}

ParseOutcome<std::vector<std::string>> parse_subquestions(const std::string& raw,
                                                          int max_subquestions) {
    std::vector<std::string> out;
    for (const auto& line : split_lines(raw)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        std::string item;
        if (t[0] == '-' || t[0] == '*') {
            item = trim(t.substr(1));
        } else if (std::isdigit(static_cast<unsigned char>(t[0]))) {
            std::size_t pos = 0;
            while (pos < t.size() && std::isdigit(static_cast<unsigned char>(t[pos]))) ++pos;
            if (pos < t.size() && (t[pos] == '.' || t[pos] == ')')) item = trim(t.substr(pos + 1));
            else continue;
        } else {
            continue;
        }
        if (item.empty()) continue;
        out.push_back(item);
        if (out.size() == std::size_t(max_subquestions)) break;
    }
    if (out.empty())
        return ParseOutcome<std::vector<std::string>>::failure("no_subquestions_found", raw);
    return ParseOutcome<std::vector<std::string>>::success(std::move(out), raw);
}

ParseOutcome<PlanningDecision> parse_planning_decision(const std::string& raw) {
    PlanningDecision d;
    bool saw_sufficient = false;
    bool saw_quality = false;

    for (const auto& line : split_lines(raw)) {
        if (auto v = marker_value(line, "quality")) {
            const std::string value = to_lower(strip_trailing_punct(*v));
            if (value == "good") d.quality_verdict = PlanningDecision::Quality::good;
            else if (value == "poor") d.quality_verdict = PlanningDecision::Quality::poor;
            else return ParseOutcome<PlanningDecision>::failure("invalid QUALITY value", raw);
            saw_quality = true;
        } else if (auto r = marker_value(line, "rewrite")) {
            if (!r->empty()) d.rewritten_query = *r;
        } else if (auto e = marker_value(line, "explore")) {
            if (!e->empty()) d.explore_points.push_back(*e);
        } else if (auto s = marker_value(line, "sufficient")) {
            const std::string value = to_lower(strip_trailing_punct(*s));
            if (value == "yes") d.sufficient = true;
            else if (value == "no") d.sufficient = false;
            else return ParseOutcome<PlanningDecision>::failure("invalid SUFFICIENT value", raw);
            saw_sufficient = true;
        }
    }
    if (!saw_sufficient)
        return ParseOutcome<PlanningDecision>::failure("missing SUFFICIENT line", raw);
    (void)saw_quality;  // quality defaults to good when the line is absent
    if (d.quality_verdict == PlanningDecision::Quality::good) d.rewritten_query.reset();
    return ParseOutcome<PlanningDecision>::success(std::move(d), raw);
}

ParseOutcome<std::map<std::string, JudgeScoreBlock>> parse_judge_scores(const std::string& raw) {
    using Result = std::map<std::string, JudgeScoreBlock>;
    Result agents;
    std::string current;

    for (const auto& line : split_lines(raw)) {
        if (auto name = marker_value(line, "agent")) {
            current = to_lower(*name);
            if (current.empty())
                return ParseOutcome<Result>::failure("empty agent name", raw);
            agents[current];  // block may legitimately repeat; later lines accumulate
            continue;
        }
        if (current.empty()) continue;
        for (const auto& metric : judge_metrics()) {
            if (auto v = marker_value(line, metric)) {
                std::string score_text = *v;
                std::string justification;
                if (auto bar = score_text.find('|'); bar != std::string::npos) {
                    justification = trim(score_text.substr(bar + 1));
                    score_text = trim(score_text.substr(0, bar));
                }
                int score = 0;
                try {
                    std::size_t consumed = 0;
                    score = std::stoi(score_text, &consumed);
                    if (consumed != score_text.size())
                        return ParseOutcome<Result>::failure("non-integer score for " + metric, raw);
                } catch (const std::exception&) {
                    return ParseOutcome<Result>::failure("non-integer score for " + metric, raw);
                }
                if (score < 0 || score > 5)
                    return ParseOutcome<Result>::failure("score out of range 0-5 for " + metric, raw);
                agents[current].scores[metric] = score;
                agents[current].justifications[metric] = justification;
                break;
            }
        }
    }

    if (agents.empty()) return ParseOutcome<Result>::failure("no AGENT blocks found", raw);
    for (const auto& [name, block] : agents) {
        for (const auto& metric : judge_metrics()) {
            if (!block.scores.count(metric))
                return ParseOutcome<Result>::failure("missing metric " + metric + " for agent " + name,
                                                     raw);
        }
    }
    return ParseOutcome<Result>::success(std::move(agents), raw);
}

ParseOutcome<ReactAction> parse_react_action(const std::string& raw) {
    const auto lines = split_lines(raw);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (auto v = marker_value(lines[i], "action")) {
            std::string value = trim(*v);
            if (to_lower(value.substr(0, 6)) == "search") {
                std::string query = trim(value.substr(6));
                if (!query.empty())
                    return ParseOutcome<ReactAction>::success(
                        {ReactAction::Kind::search, query}, raw);
            }
            return ParseOutcome<ReactAction>::failure("unrecognized action: " + value, raw);
        }
        if (auto f = marker_value(lines[i], "final")) {
            std::string answer = *f;
            for (std::size_t j = i + 1; j < lines.size(); ++j) answer += "\n" + lines[j];
            return ParseOutcome<ReactAction>::success(
                {ReactAction::Kind::final_answer, trim(answer)}, raw);
        }
    }
    return ParseOutcome<ReactAction>::failure("no ACTION or FINAL line", raw);
}

}  // namespace srsa
