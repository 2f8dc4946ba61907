#pragma once

#include <filesystem>
#include <string>

#include "srsa/core/types.hpp"

namespace srsa {

/// The fixed prompts: p_s (router), the rephrase prompt, p_parallel, the
/// planning-step prompts, p_RAG, the baseline ReAct prompts and the judge
/// rubric. Defaults are embedded; any of them can be overridden by dropping a
/// <name>.txt file into a template directory.
struct TemplateSet {
    std::string router;       // p_s
    std::string rewrite;      // query rephrasing (Direct fallback + ReAct module)
    std::string parallel;     // p_parallel
    std::string summarize;    // planning per-iteration compression
    std::string planning;     // planning reasoning step
    std::string rag;          // p_RAG
    std::string react_thought;
    std::string react_close;
    std::string judge;

    static TemplateSet defaults();
    /// Defaults with per-file overrides from dir (router.txt, rewrite.txt, ...).
    static TemplateSet load(const std::filesystem::path& dir);

    /// Stable hash of all templates; recorded in every Transcript so result
    /// drift is attributable to prompt changes.
    std::string digest() const;
};

// Renderers. All are pure: fixed inputs yield byte-identical prompts.

PromptText render_router_prompt(const QueryRecord& query, const TimeContext& time,
                                const TemplateSet& t);
PromptText render_rewrite_prompt(const QueryRecord& query, const TimeContext& time,
                                 const TemplateSet& t);
PromptText render_parallel_prompt(const std::string& rephrased_query,
                                  const std::string& suggestions, const TemplateSet& t);
PromptText render_summarize_prompt(const QueryRecord& query,
                                   const std::vector<SearchHit>& hits, int iteration,
                                   const TemplateSet& t);
PromptText render_planning_prompt(const QueryRecord& query, const std::string& suggestions,
                                  const std::string& current_query,
                                  const std::vector<SearchHit>& latest_hits,
                                  const std::vector<std::string>& memory, int iteration,
                                  int max_iterations, const TemplateSet& t);
PromptText render_rag_prompt(const QueryRecord& query, const SupportingDocuments& docs,
                             const TemplateSet& t);
PromptText render_react_thought_prompt(const QueryRecord& query, const std::string& rephrased,
                                       const std::string& history, const TemplateSet& t);
PromptText render_react_close_prompt(const QueryRecord& query, const std::string& history,
                                     const TemplateSet& t);

/// Serializes hits into the plain-text block used inside prompts.
std::string hits_as_text(const std::vector<SearchHit>& hits);

}  // namespace srsa
