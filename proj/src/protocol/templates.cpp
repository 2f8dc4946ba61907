#include "srsa/protocol/templates.hpp"

#include <fstream>
#include <sstream>

namespace srsa {

namespace {

const char* kRouter = R"(You are the strategy router of a search agent. Given the current date and a contextual user query, pick the single best search strategy:

- Direct: one rewritten search is enough. Choose this for simple questions answerable from a single round of retrieval.
- Parallel: the query contains two or more independent concepts or tasks that can be searched as separate sub-questions at the same time.
- Planning: the query needs a sequence of searches where each step depends on what the previous search returned.

Respond with exactly these two lines and nothing else:
STRATEGY: <Direct|Parallel|Planning>
SUGGESTIONS: <overview search suggestions for the chosen strategy; for Direct, a concise rewritten search query>)";

const char* kRewrite = R"(Rewrite the user's lengthy contextual query into one concise, precise search-engine query. Output only the rewritten query on a single line, with no commentary.)";

const char* kParallel = R"(Decompose the search task into independent sub-questions that can be searched in parallel. Use the overview suggestions as guidance. Output only a numbered list, one sub-question per line:
1. <first sub-question>
2. <second sub-question>)";

const char* kSummarize = R"(Compress the search results below into a short summary of at most 150 words. Keep concrete facts, names, numbers and dates that help answer the user's query; drop irrelevant or nonsensical content. Output only the summary text.)";

const char* kPlanning = R"(You are running an iterative planning search. Inspect the latest search results and the iteration memory, then reason about the next step:
1. Evaluate the quality of the latest search results. If they are poor, state why and rewrite the search query.
2. Identify interesting or informative points worth exploring further.
3. Decide whether everything gathered so far is sufficient to answer the user's query comprehensively.

Respond using exactly these marker lines (REWRITE only when quality is poor; EXPLORE may repeat or be omitted):
QUALITY: <good|poor>
REWRITE: <rewritten search query>
EXPLORE: <follow-up search query>
SUFFICIENT: <yes|no>)";

const char* kRag = R"(Answer the user's query using only the reference passages provided below. Address every part of the query. If the references do not cover a part, say so rather than inventing information. Write a helpful, detailed, well-organized answer.)";

const char* kReactThought = R"(You are a search agent following a Thought-Action loop. Think about what to search for next given the query and the observations so far, then emit exactly one action line:
ACTION: search <search-engine query>
or, when you can already answer:
FINAL: <your complete answer>)";

const char* kReactClose = R"(The search loop has ended. Using the entire iteration history below, write the final answer to the user's query.)";

const char* kJudge = R"(You are a strict referee comparing the answers of several search agents to the same user query. Score every agent on four metrics, each an integer from 0 to 5:

- INFORMATIVENESS: how rich the answer is in useful, relevant information; more content of value to the user scores higher.
- COMPLETENESS: how fully the answer covers every concept and sub-request contained in the query.
- NOVELTY: how much of the answer required searching and is not common knowledge; less obvious, harder-to-obtain information scores higher.
- ACTIONABILITY: how directly the user can act on the answer; specific, concrete guidance scores higher, vague or abstract text lower.

Compare the agents against each other so relative performance is reflected. Justify each score by referencing or summarizing specific parts of the answer. Respond with one block per agent, using exactly this shape:
AGENT: <agent name>
INFORMATIVENESS: <0-5> | <justification>
COMPLETENESS: <0-5> | <justification>
NOVELTY: <0-5> | <justification>
ACTIONABILITY: <0-5> | <justification>)";

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void maybe_override(std::string& slot, const std::filesystem::path& dir, const char* name) {
    auto p = dir / (std::string(name) + ".txt");
    if (std::filesystem::exists(p)) slot = read_file(p);
}

}  // namespace

TemplateSet TemplateSet::defaults() {
    TemplateSet t;
    t.router = kRouter;
    t.rewrite = kRewrite;
    t.parallel = kParallel;
    t.summarize = kSummarize;
    t.planning = kPlanning;
    t.rag = kRag;
    t.react_thought = kReactThought;
    t.react_close = kReactClose;
    t.judge = kJudge;
    return t;
}

TemplateSet TemplateSet::load(const std::filesystem::path& dir) {
    TemplateSet t = defaults();
    maybe_override(t.router, dir, "router");
    maybe_override(t.rewrite, dir, "rewrite");
    maybe_override(t.parallel, dir, "parallel");
    maybe_override(t.summarize, dir, "summarize");
    maybe_override(t.planning, dir, "planning");
    maybe_override(t.rag, dir, "rag");
    maybe_override(t.react_thought, dir, "react_thought");
    maybe_override(t.react_close, dir, "react_close");
    maybe_override(t.judge, dir, "judge");
    return t;
}

std::string TemplateSet::digest() const {
    std::string all = router + '\0' + rewrite + '\0' + parallel + '\0' + summarize + '\0' +
                      planning + '\0' + rag + '\0' + react_thought + '\0' + react_close + '\0' +
                      judge;
    return digest_bytes(all);
}

std::string hits_as_text(const std::vector<SearchHit>& hits) {
    std::ostringstream out;
    if (hits.empty()) {
        out << "(no results)\n";
        return out.str();
    }
    int i = 1;
    for (const auto& h : hits) {
        out << "[" << i++ << "] " << h.title << " (" << h.url << ")\n" << h.content << "\n";
    }
    return out.str();
}

namespace {

std::string time_line(const TimeContext& time) {
    return "Current date: " + time.date + " (" + time.weekday + ", " + time.timezone_label + ")";
}

}  // namespace

PromptText render_router_prompt(const QueryRecord& query, const TimeContext& time,
                                const TemplateSet& t) {
    return {t.router, time_line(time) + "\n\nUser query:\n" + query.text};
}

PromptText render_rewrite_prompt(const QueryRecord& query, const TimeContext& time,
                                 const TemplateSet& t) {
    return {t.rewrite, time_line(time) + "\n\nUser query:\n" + query.text};
}

PromptText render_parallel_prompt(const std::string& rephrased_query,
                                  const std::string& suggestions, const TemplateSet& t) {
    std::string user = "Search task:\n" + rephrased_query;
    if (!suggestions.empty()) user += "\n\nOverview suggestions:\n" + suggestions;
    return {t.parallel, user};
}

PromptText render_summarize_prompt(const QueryRecord& query,
                                   const std::vector<SearchHit>& hits, int iteration,
                                   const TemplateSet& t) {
    std::string user = "User query:\n" + query.text + "\n\nSearch results (iteration " +
                       std::to_string(iteration) + "):\n" + hits_as_text(hits);
    return {t.summarize, user};
}

PromptText render_planning_prompt(const QueryRecord& query, const std::string& suggestions,
                                  const std::string& current_query,
                                  const std::vector<SearchHit>& latest_hits,
                                  const std::vector<std::string>& memory, int iteration,
                                  int max_iterations, const TemplateSet& t) {
    std::ostringstream user;
    user << "User query:\n" << query.text << "\n";
    if (!suggestions.empty()) user << "\nOverview suggestions:\n" << suggestions << "\n";
    user << "\nIteration " << iteration << " of at most " << max_iterations << ".\n";
    user << "Latest search query: " << current_query << "\n";
    user << "\nLatest search results:\n" << hits_as_text(latest_hits);
    if (!memory.empty()) {
        user << "\nIteration memory:\n";
        for (std::size_t i = 0; i < memory.size(); ++i)
            user << "- " << memory[i] << "\n";
    }
    return {t.planning, user.str()};
}

PromptText render_rag_prompt(const QueryRecord& query, const SupportingDocuments& docs,
                             const TemplateSet& t) {
    std::ostringstream user;
    user << "User query:\n" << query.text << "\n\nReference passages:\n";
    if (docs.sections.empty()) {
        user << "NO REFERENCES RETRIEVED\n";
    } else {
        for (const auto& s : docs.sections) {
            user << "== " << s.label << " ==\n";
            if (s.summary) user << *s.summary << "\n";
            else user << hits_as_text(s.hits);
        }
    }
    return {t.rag, user.str()};
}

PromptText render_react_thought_prompt(const QueryRecord& query, const std::string& rephrased,
                                       const std::string& history, const TemplateSet& t) {
    std::string user = "User query:\n" + query.text + "\n\nRephrased query:\n" + rephrased;
    if (!history.empty()) user += "\n\nIteration history:\n" + history;
    return {t.react_thought, user};
}

PromptText render_react_close_prompt(const QueryRecord& query, const std::string& history,
                                     const TemplateSet& t) {
    return {t.react_close, "User query:\n" + query.text + "\n\nIteration history:\n" + history};
}

}  // namespace srsa
