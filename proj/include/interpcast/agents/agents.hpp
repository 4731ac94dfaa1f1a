#pragma once

#include "interpcast/agents/prompts.hpp"
#include "interpcast/domain/config.hpp"
#include "interpcast/domain/types.hpp"
#include "interpcast/gateway/gateway.hpp"

#include <vector>

namespace interpcast::agents {

// Everything an agent operation needs to talk to the model.
struct AgentContext {
    gateway::Gateway& gw;
    const domain::PipelineConfig& cfg;
    const PromptLibrary& prompts;
};

// ---- topic and case identification ----

// TA proposes topic-case pairs. attempt 0 is the first pass; attempts > 0
// re-invoke with the rejected verdicts embedded in the prompt.
domain::TopicCaseSet analyze_topics(AgentContext& ctx, const domain::Chapter& chapter,
                                    int attempt = 0,
                                    const std::vector<domain::PairVerdict>* rejected = nullptr);

// PR-1 accepts or rejects every pair; result is in set order.
std::vector<domain::PairVerdict> validate_pairs(AgentContext& ctx, const domain::Chapter& chapter,
                                                const domain::TopicCaseSet& set, int attempt = 0);

// CA-1 grounds each case in the chapter; result is in set order.
std::vector<domain::EnrichedCase> enrich_cases(AgentContext& ctx, const domain::Chapter& chapter,
                                               const domain::TopicCaseSet& set);

// ---- preliminary interpretation ----

domain::Expansion expand_case(AgentContext& ctx, const domain::Topic& topic,
                              const domain::EnrichedCase& enriched);

domain::Argument argue_case(AgentContext& ctx, const domain::Topic& topic,
                            const domain::EnrichedCase& enriched);

domain::TopicDraft draft_topic(AgentContext& ctx, const domain::Topic& topic,
                               const domain::EnrichedCase& enriched,
                               const domain::Argument& argument,
                               const domain::Expansion& expansion);

domain::DraftFeedback review_draft(AgentContext& ctx, const domain::TopicDraft& draft);

domain::TopicDraft revise_draft(AgentContext& ctx, const domain::TopicDraft& draft,
                                const domain::DraftFeedback& feedback);

// ---- oral rewriting ----

domain::OralScript oralize(AgentContext& ctx, const domain::TopicDraft& draft);

domain::OralFeedback review_oral(AgentContext& ctx, const domain::OralScript& script);

domain::OralScript revise_oral(AgentContext& ctx, const domain::OralScript& script,
                               const domain::OralFeedback& feedback);

// ---- reconstruction and revision ----

// Seeds the manuscript from the first oral script without a model call.
domain::Manuscript init_manuscript(const domain::OralScript& first);

domain::Manuscript integrate(AgentContext& ctx, const domain::Manuscript& manuscript,
                             const domain::OralScript& segment);

domain::ManuscriptFeedback review_manuscript(AgentContext& ctx,
                                             const domain::Manuscript& manuscript);

domain::Manuscript revise_manuscript(AgentContext& ctx, const domain::Manuscript& manuscript,
                                     const domain::ManuscriptFeedback& feedback);

} // namespace interpcast::agents
