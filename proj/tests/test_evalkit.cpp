#include <doctest.h>

#include <random>

#include "srsa/eval/judge.hpp"
#include "srsa/eval/winrate.hpp"
#include "srsa/protocol/parsers.hpp"

using namespace srsa;

namespace {

std::vector<JudgeExample> synthetic_bank() {
    std::vector<JudgeExample> bank;
    for (int i = 0; i < 8; ++i) {
        JudgeExample ex;
        ex.query = "example query " + std::to_string(i);
        ex.answers = {{"srsa", "answer a"}, {"simple", "answer b"}, {"react", "answer c"}};
        ex.scored_output =
            "AGENT: srsa\nINFORMATIVENESS: 4 | x\nCOMPLETENESS: 4 | x\nNOVELTY: 3 | x\n"
            "ACTIONABILITY: 4 | x\n";
        bank.push_back(std::move(ex));
    }
    return bank;
}

std::string judge_block(int info, int comp, int nov, int act) {
    std::string out;
    for (const char* agent : {"srsa", "simple", "react"}) {
        out += std::string("AGENT: ") + agent + "\n";
        out += "INFORMATIVENESS: " + std::to_string(info) + " | i\n";
        out += "COMPLETENESS: " + std::to_string(comp) + " | c\n";
        out += "NOVELTY: " + std::to_string(nov) + " | n\n";
        out += "ACTIONABILITY: " + std::to_string(act) + " | a\n";
    }
    return out;
}

const QueryRecord kQuery{"q1", Domain::other, "what should I do?", {}};
const std::map<std::string, std::string> kAnswers{
    {"srsa", "A"}, {"simple", "B"}, {"react", "C"}};

}  // namespace

TEST_CASE("judge_question averages the two runs per metric") {
    ScriptedLlm llm({judge_block(4, 4, 2, 3), judge_block(5, 4, 3, 3)});
    auto templates = TemplateSet::defaults();
    Transcript t;
    auto scores =
        judge_question(kQuery, kAnswers, synthetic_bank(), llm, templates, JudgeConfig{}, t);
    REQUIRE(scores.has_value());
    CHECK(scores->at("srsa").informativeness == doctest::Approx(4.5));
    CHECK(scores->at("srsa").completeness == doctest::Approx(4.0));
    CHECK(scores->at("srsa").novelty == doctest::Approx(2.5));
    CHECK(scores->at("srsa").actionability == doctest::Approx(3.0));
    CHECK(t.count_llm_calls() == 2);  // exactly 2 judging calls when parses succeed
}

TEST_CASE("judge_question identical runs keep the common scores") {
    ScriptedLlm llm({judge_block(3, 3, 3, 3), judge_block(3, 3, 3, 3)});
    auto templates = TemplateSet::defaults();
    Transcript t;
    auto scores =
        judge_question(kQuery, kAnswers, synthetic_bank(), llm, templates, JudgeConfig{}, t);
    REQUIRE(scores.has_value());
    for (const char* agent : {"srsa", "simple", "react"}) {
        CHECK(scores->at(agent).informativeness == doctest::Approx(3.0));
        CHECK(scores->at(agent).actionability == doctest::Approx(3.0));
    }
}

TEST_CASE("judge_question retries a failed run once, then gives up") {
    SUBCASE("retry succeeds") {
        ScriptedLlm llm({"garbage", judge_block(4, 4, 4, 4), judge_block(2, 2, 2, 2)});
        auto templates = TemplateSet::defaults();
        Transcript t;
        auto scores =
            judge_question(kQuery, kAnswers, synthetic_bank(), llm, templates, JudgeConfig{}, t);
        REQUIRE(scores.has_value());
        CHECK(scores->at("srsa").informativeness == doctest::Approx(3.0));
        CHECK(t.count_llm_calls() == 3);
    }
    SUBCASE("second failure marks the question unjudged") {
        ScriptedLlm llm({"garbage", "more garbage"});
        auto templates = TemplateSet::defaults();
        Transcript t;
        auto scores =
            judge_question(kQuery, kAnswers, synthetic_bank(), llm, templates, JudgeConfig{}, t);
        CHECK_FALSE(scores.has_value());
    }
}

TEST_CASE("judge_question covers all 8 examples across the two prompts") {
    ScriptedLlm llm({judge_block(3, 3, 3, 3), judge_block(3, 3, 3, 3)}, true);
    auto templates = TemplateSet::defaults();
    Transcript t;
    auto bank = synthetic_bank();
    for (int i = 0; i < 8; ++i) bank[i].query = "unique-shot-" + std::to_string(i);
    judge_question(kQuery, kAnswers, bank, llm, templates, JudgeConfig{}, t);

    REQUIRE(llm.recorded_prompts().size() == 2);
    const auto& first = llm.recorded_prompts()[0].user;
    const auto& second = llm.recorded_prompts()[1].user;
    for (int i = 0; i < 4; ++i) {
        CHECK(first.find("unique-shot-" + std::to_string(i)) != std::string::npos);
        CHECK(second.find("unique-shot-" + std::to_string(i)) == std::string::npos);
    }
    for (int i = 4; i < 8; ++i) {
        CHECK(second.find("unique-shot-" + std::to_string(i)) != std::string::npos);
        CHECK(first.find("unique-shot-" + std::to_string(i)) == std::string::npos);
    }
}

TEST_CASE("example bank loads from fixture directory in filename order") {
    auto bank = load_example_bank(std::string(SRSA_FIXTURE_DIR) + "/judge_examples");
    REQUIRE(bank.size() == 8);
    CHECK_FALSE(bank[0].query.empty());
    CHECK(bank[0].answers.size() == 3);
    // scored outputs in the bank must themselves parse
    for (const auto& ex : bank) CHECK_FALSE(ex.scored_output.empty());
}

namespace {

JudgeScores make_scores(double info, double comp, double nov, double act) {
    JudgeScores s;
    s.informativeness = info;
    s.completeness = comp;
    s.novelty = nov;
    s.actionability = act;
    return s;
}

}  // namespace

TEST_CASE("win_rates: strict winner on both questions") {
    std::vector<QuestionScores> qs(2);
    for (auto& q : qs) {
        q.by_agent["A"] = make_scores(5, 5, 5, 5);
        q.by_agent["B"] = make_scores(3, 3, 3, 3);
        q.by_agent["C"] = make_scores(2, 2, 2, 2);
    }
    auto table = win_rates(qs);
    for (const auto& metric : judge_metrics()) {
        CHECK(table.rates.at(metric).at("A") == doctest::Approx(1.0));
        CHECK(table.rates.at(metric).at("B") == doctest::Approx(0.0));
        CHECK(table.rates.at(metric).at("C") == doctest::Approx(0.0));
    }
}

TEST_CASE("win_rates: two-way tie credits both winners") {
    std::vector<QuestionScores> qs(1);
    qs[0].by_agent["A"] = make_scores(5, 5, 5, 5);
    qs[0].by_agent["B"] = make_scores(5, 5, 5, 5);
    qs[0].by_agent["C"] = make_scores(3, 3, 3, 3);
    auto table = win_rates(qs);
    CHECK(table.rates.at("informativeness").at("A") == doctest::Approx(0.5));
    CHECK(table.rates.at("informativeness").at("B") == doctest::Approx(0.5));
    CHECK(table.rates.at("informativeness").at("C") == doctest::Approx(0.0));
}

TEST_CASE("win_rates: mixed win and three-way tie") {
    std::vector<QuestionScores> qs(2);
    qs[0].by_agent["A"] = make_scores(5, 5, 5, 5);
    qs[0].by_agent["B"] = make_scores(4, 4, 4, 4);
    qs[0].by_agent["C"] = make_scores(4, 4, 4, 4);
    qs[1].by_agent["A"] = make_scores(3, 3, 3, 3);
    qs[1].by_agent["B"] = make_scores(3, 3, 3, 3);
    qs[1].by_agent["C"] = make_scores(3, 3, 3, 3);
    auto table = win_rates(qs);
    // counts: A = 2, B = 1, C = 1 over total 4
    CHECK(table.rates.at("novelty").at("A") == doctest::Approx(0.5));
    CHECK(table.rates.at("novelty").at("B") == doctest::Approx(0.25));
    CHECK(table.rates.at("novelty").at("C") == doctest::Approx(0.25));
}

TEST_CASE("win_rates properties over randomized tables") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> score2(0, 10);  // half-integers after averaging
    std::uniform_int_distribution<int> n_questions(1, 12);
    for (int round = 0; round < 200; ++round) {
        std::vector<QuestionScores> qs(n_questions(rng));
        for (auto& q : qs)
            for (const char* agent : {"srsa", "simple", "react"})
                q.by_agent[agent] = make_scores(score2(rng) / 2.0, score2(rng) / 2.0,
                                                score2(rng) / 2.0, score2(rng) / 2.0);
        auto table = win_rates(qs);
        for (const auto& metric : judge_metrics()) {
            double sum = 0;
            for (const auto& [agent, rate] : table.rates.at(metric)) {
                CHECK(rate >= 0.0);
                sum += rate;
            }
            CHECK(std::fabs(sum - 1.0) <= 1e-12);
        }
        // permutation invariance over question order
        auto shuffled = qs;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        auto table2 = win_rates(shuffled);
        for (const auto& metric : judge_metrics())
            for (const auto& [agent, rate] : table.rates.at(metric))
                CHECK(table2.rates.at(metric).at(agent) == doctest::Approx(rate).epsilon(1e-12));
    }
    CHECK_THROWS_AS(win_rates({}), std::invalid_argument);
}
