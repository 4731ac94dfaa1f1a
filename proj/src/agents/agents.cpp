#include "interpcast/agents/agents.hpp"

#include "interpcast/domain/serde.hpp"
#include "interpcast/domain/validate.hpp"
#include "interpcast/errors.hpp"

#include <algorithm>
#include <map>

namespace interpcast::agents {

namespace {

using gateway::ChatRequest;
using Values = std::map<std::string, std::string>;

void require(bool cond, const std::string& msg) {
    if (!cond) throw PreconditionError(msg);
}

void require_valid(const domain::ValidationReport& r, const std::string& what) {
    if (!r.ok()) throw PreconditionError(what + ": " + r.joined());
}

ChatRequest make_request(AgentContext& ctx, const std::string& role_file,
                         const std::string& role_tag, const std::string& section,
                         const Values& values) {
    ChatRequest req;
    req.system_prompt = ctx.prompts.render(role_file, "system", values);
    req.user_prompt = ctx.prompts.render(role_file, section, values);
    req.temperature = ctx.cfg.temperature;
    req.max_tokens = ctx.cfg.max_tokens;
    req.role_tag = role_tag;
    return req;
}

std::string dump_set(const domain::TopicCaseSet& set) {
    ijson j = set;
    return j.dump(2);
}

std::string dump_verdicts(const std::vector<domain::PairVerdict>& verdicts) {
    ijson arr = ijson::array();
    for (const auto& v : verdicts) arr.push_back(ijson(v));
    return arr.dump(2);
}

// Coverage rule shared by PR-1 and CA-1 responses: exactly one entry per
// topic_index in the reviewed set.
void check_coverage(domain::ValidationReport& report, const domain::TopicCaseSet& set,
                    const std::vector<int>& got, const std::string& what) {
    std::map<int, int> counts;
    for (int idx : got) ++counts[idx];
    for (const auto& topic : set.topics) {
        auto it = counts.find(topic.index);
        if (it == counts.end()) {
            report.add("missing " + what + " for topic_index " + std::to_string(topic.index));
        } else if (it->second > 1) {
            report.add("duplicate " + what + " for topic_index " + std::to_string(topic.index));
        }
    }
    for (const auto& [idx, n] : counts) {
        bool known = std::any_of(set.topics.begin(), set.topics.end(),
                                 [&](const domain::Topic& t) { return t.index == idx; });
        if (!known) {
            report.add(what + " for unknown topic_index " + std::to_string(idx));
        }
    }
}

void require_pair_key(const domain::Topic& topic, const domain::EnrichedCase& enriched) {
    require(topic.index >= 1, "topic index must be >= 1");
    require(!topic.statement.empty(), "topic statement must be non-empty");
    require(!enriched.text.empty(), "enriched case text must be non-empty");
    require(topic.index == enriched.topic_index,
            "topic and case must share topic_index (" + std::to_string(topic.index) + " vs " +
                std::to_string(enriched.topic_index) + ")");
}

} // namespace

domain::TopicCaseSet analyze_topics(AgentContext& ctx, const domain::Chapter& chapter,
                                    int attempt,
                                    const std::vector<domain::PairVerdict>* rejected) {
    require_valid(domain::validate(chapter, ctx.cfg.max_chapter_chars), "chapter");
    require(attempt >= 0 && attempt <= ctx.cfg.i_max, "TA attempt out of range");
    require((attempt == 0) == (rejected == nullptr || rejected->empty()),
            "re-invocations carry the rejected verdicts, first calls none");

    Values values = {{"chapter_title", chapter.title},
                     {"chapter", chapter.body},
                     {"topic_cap", std::to_string(ctx.cfg.topic_cap)},
                     {"verdicts", rejected ? dump_verdicts(*rejected) : std::string()}};
    auto req = make_request(ctx, "ta", "TA", attempt == 0 ? "user" : "user.reinvoke", values);
    TraceContext trace{Stage::Tci, std::nullopt, attempt};
    auto check = [&](const domain::TopicCaseSet& v) {
        return domain::validate(v, ctx.cfg.topic_cap);
    };
    return ctx.gw.complete_structured<domain::TopicCaseSet>(req, trace, check).value;
}

std::vector<domain::PairVerdict> validate_pairs(AgentContext& ctx, const domain::Chapter& chapter,
                                                const domain::TopicCaseSet& set, int attempt) {
    require_valid(domain::validate(set, ctx.cfg.topic_cap), "topic-case set");

    Values values = {{"chapter_title", chapter.title},
                     {"chapter", chapter.body},
                     {"pairs", dump_set(set)}};
    auto req = make_request(ctx, "pr1", "PR1", "user", values);
    TraceContext trace{Stage::Tci, std::nullopt, attempt};
    auto check = [&](const domain::PairVerdictList& v) {
        auto report = domain::validate(v);
        std::vector<int> got;
        for (const auto& verdict : v.verdicts) got.push_back(verdict.topic_index);
        check_coverage(report, set, got, "verdict");
        return report;
    };
    auto list = ctx.gw.complete_structured<domain::PairVerdictList>(req, trace, check).value;

    std::vector<domain::PairVerdict> ordered;
    for (const auto& topic : set.topics) {
        for (const auto& verdict : list.verdicts) {
            if (verdict.topic_index == topic.index) ordered.push_back(verdict);
        }
    }
    return ordered;
}

std::vector<domain::EnrichedCase> enrich_cases(AgentContext& ctx, const domain::Chapter& chapter,
                                               const domain::TopicCaseSet& set) {
    require_valid(domain::validate(set, ctx.cfg.topic_cap), "topic-case set");

    Values values = {{"chapter_title", chapter.title},
                     {"chapter", chapter.body},
                     {"pairs", dump_set(set)}};
    auto req = make_request(ctx, "ca1", "CA1", "user", values);
    TraceContext trace{Stage::Tci, std::nullopt, 0};
    auto check = [&](const domain::EnrichedCaseList& v) {
        auto report = domain::validate(v);
        std::vector<int> got;
        for (const auto& c : v.cases) got.push_back(c.topic_index);
        check_coverage(report, set, got, "enriched case");
        return report;
    };
    auto list = ctx.gw.complete_structured<domain::EnrichedCaseList>(req, trace, check).value;

    std::vector<domain::EnrichedCase> ordered;
    for (const auto& topic : set.topics) {
        for (const auto& c : list.cases) {
            if (c.topic_index == topic.index) ordered.push_back(c);
        }
    }
    return ordered;
}

domain::Expansion expand_case(AgentContext& ctx, const domain::Topic& topic,
                              const domain::EnrichedCase& enriched) {
    require_pair_key(topic, enriched);

    Values values = {{"topic", topic.statement},
                     {"case", enriched.text},
                     {"background", enriched.added_background},
                     {"topic_index", std::to_string(topic.index)}};
    auto req = make_request(ctx, "ca2", "CA2", "user", values);
    TraceContext trace{Stage::Pi, topic.index, 0};
    auto check = [&](const domain::Expansion& v) {
        auto report = domain::validate(v);
        if (v.topic_index != topic.index) {
            report.add("topic_index mismatch: expected " + std::to_string(topic.index));
        }
        return report;
    };
    return ctx.gw.complete_structured<domain::Expansion>(req, trace, check).value;
}

domain::Argument argue_case(AgentContext& ctx, const domain::Topic& topic,
                            const domain::EnrichedCase& enriched) {
    require_pair_key(topic, enriched);

    Values values = {{"topic", topic.statement},
                     {"case", enriched.text},
                     {"background", enriched.added_background},
                     {"topic_index", std::to_string(topic.index)}};
    auto req = make_request(ctx, "ca3", "CA3", "user", values);
    TraceContext trace{Stage::Pi, topic.index, 0};
    auto check = [&](const domain::Argument& v) {
        auto report = domain::validate(v);
        if (v.topic_index != topic.index) {
            report.add("topic_index mismatch: expected " + std::to_string(topic.index));
        }
        return report;
    };
    return ctx.gw.complete_structured<domain::Argument>(req, trace, check).value;
}

domain::TopicDraft draft_topic(AgentContext& ctx, const domain::Topic& topic,
                               const domain::EnrichedCase& enriched,
                               const domain::Argument& argument,
                               const domain::Expansion& expansion) {
    require_pair_key(topic, enriched);
    require(argument.topic_index == topic.index && expansion.topic_index == topic.index,
            "all draft inputs must share topic_index");
    require(!argument.text.empty() && !expansion.text.empty(),
            "argument and expansion must be non-empty");

    Values values = {{"topic", topic.statement},
                     {"case", enriched.text},
                     {"background", enriched.added_background},
                     {"argument", argument.text},
                     {"expansion", expansion.text},
                     {"topic_index", std::to_string(topic.index)}};
    auto req = make_request(ctx, "ed1", "ED1", "user", values);
    for (const std::string* input :
         {&topic.statement, &enriched.text, &argument.text, &expansion.text}) {
        if (req.user_prompt.find(*input) == std::string::npos) {
            throw ConfigError("ed1 [user] template must embed topic, case, argument and "
                              "expansion verbatim");
        }
    }
    TraceContext trace{Stage::Pi, topic.index, 0};
    auto check = [&](const domain::TopicDraft& v) {
        domain::ValidationReport report;
        if (v.topic_index != topic.index) {
            report.add("topic_index mismatch: expected " + std::to_string(topic.index));
        }
        if (v.text.empty()) report.add("draft text must be non-empty");
        return report;
    };
    auto draft = ctx.gw.complete_structured<domain::TopicDraft>(req, trace, check).value;
    draft.round = 0;
    draft.status = domain::ArtifactStatus::in_review;
    return draft;
}

domain::DraftFeedback review_draft(AgentContext& ctx, const domain::TopicDraft& draft) {
    require_valid(domain::validate(draft, ctx.cfg.i_max), "draft");

    Values values = {{"draft", draft.text}};
    auto req = make_request(ctx, "pr2", "PR2", "user", values);
    TraceContext trace{Stage::Pi, draft.topic_index, draft.round};
    auto check = [](const domain::DraftFeedback& v) { return domain::validate(v); };
    return ctx.gw.complete_structured<domain::DraftFeedback>(req, trace, check).value;
}

domain::TopicDraft revise_draft(AgentContext& ctx, const domain::TopicDraft& draft,
                                const domain::DraftFeedback& feedback) {
    require_valid(domain::validate(draft, ctx.cfg.i_max), "draft");
    require(!feedback.pass(), "feedback passed; nothing to revise");
    require(draft.round < ctx.cfg.i_max, "revision budget exhausted");

    Values values = {{"draft", draft.text},
                     {"feedback", feedback.suggestions},
                     {"topic_index", std::to_string(draft.topic_index)}};
    auto req = make_request(ctx, "ed1", "ED1", "user.revise", values);
    TraceContext trace{Stage::Pi, draft.topic_index, draft.round + 1};
    auto check = [&](const domain::TopicDraft& v) {
        domain::ValidationReport report;
        if (v.topic_index != draft.topic_index) {
            report.add("topic_index mismatch: expected " + std::to_string(draft.topic_index));
        }
        if (v.text.empty()) report.add("draft text must be non-empty");
        return report;
    };
    auto revised = ctx.gw.complete_structured<domain::TopicDraft>(req, trace, check).value;
    revised.topic_index = draft.topic_index;
    revised.round = draft.round + 1;
    revised.status = domain::ArtifactStatus::in_review;
    return revised;
}

domain::OralScript oralize(AgentContext& ctx, const domain::TopicDraft& draft) {
    require_valid(domain::validate(draft, ctx.cfg.i_max), "draft");
    require(draft.status != domain::ArtifactStatus::in_review,
            "draft must leave review before oral rewriting");

    Values values = {{"draft", draft.text},
                     {"topic_index", std::to_string(draft.topic_index)}};
    auto req = make_request(ctx, "nr", "NR", "user", values);
    TraceContext trace{Stage::Or, draft.topic_index, 0};
    auto check = [&](const domain::OralScript& v) {
        domain::ValidationReport report;
        if (v.topic_index != draft.topic_index) {
            report.add("topic_index mismatch: expected " + std::to_string(draft.topic_index));
        }
        if (v.text.empty()) report.add("script text must be non-empty");
        return report;
    };
    auto script = ctx.gw.complete_structured<domain::OralScript>(req, trace, check).value;
    script.round = 0;
    script.status = domain::ArtifactStatus::in_review;
    return script;
}

domain::OralFeedback review_oral(AgentContext& ctx, const domain::OralScript& script) {
    require_valid(domain::validate(script, ctx.cfg.i_max), "oral script");

    Values values = {{"draft", script.text}};
    auto req = make_request(ctx, "pr3", "PR3", "user", values);
    TraceContext trace{Stage::Or, script.topic_index, script.round};
    auto check = [](const domain::OralFeedback& v) { return domain::validate(v); };
    return ctx.gw.complete_structured<domain::OralFeedback>(req, trace, check).value;
}

domain::OralScript revise_oral(AgentContext& ctx, const domain::OralScript& script,
                               const domain::OralFeedback& feedback) {
    require_valid(domain::validate(script, ctx.cfg.i_max), "oral script");
    require(!feedback.pass(), "feedback passed; nothing to revise");
    require(script.round < ctx.cfg.i_max, "revision budget exhausted");

    Values values = {{"draft", script.text},
                     {"feedback", feedback.suggestions},
                     {"topic_index", std::to_string(script.topic_index)}};
    auto req = make_request(ctx, "nr", "NR", "user.revise", values);
    TraceContext trace{Stage::Or, script.topic_index, script.round + 1};
    auto check = [&](const domain::OralScript& v) {
        domain::ValidationReport report;
        if (v.topic_index != script.topic_index) {
            report.add("topic_index mismatch: expected " + std::to_string(script.topic_index));
        }
        if (v.text.empty()) report.add("script text must be non-empty");
        return report;
    };
    auto revised = ctx.gw.complete_structured<domain::OralScript>(req, trace, check).value;
    revised.topic_index = script.topic_index;
    revised.round = script.round + 1;
    revised.status = domain::ArtifactStatus::in_review;
    return revised;
}

domain::Manuscript init_manuscript(const domain::OralScript& first) {
    require(!first.text.empty(), "oral script text must be non-empty");
    require(first.status != domain::ArtifactStatus::in_review,
            "oral script must leave review before integration");
    domain::Manuscript m;
    m.text = first.text;
    m.included = {first.topic_index};
    m.round = 0;
    m.status = domain::ArtifactStatus::in_review;
    return m;
}

domain::Manuscript integrate(AgentContext& ctx, const domain::Manuscript& manuscript,
                             const domain::OralScript& segment) {
    require_valid(domain::validate(manuscript, ctx.cfg.i_max), "manuscript");
    require(segment.status != domain::ArtifactStatus::in_review,
            "oral script must leave review before integration");
    require(std::find(manuscript.included.begin(), manuscript.included.end(),
                      segment.topic_index) == manuscript.included.end(),
            "topic_index " + std::to_string(segment.topic_index) + " already integrated");

    Values values = {{"manuscript", manuscript.text}, {"segment", segment.text}};
    auto req = make_request(ctx, "ed2", "ED2", "user", values);
    TraceContext trace{Stage::Rr, segment.topic_index, 0};
    auto check = [](const domain::Manuscript& v) {
        domain::ValidationReport report;
        if (v.text.empty()) report.add("manuscript text must be non-empty");
        return report;
    };
    auto merged = ctx.gw.complete_structured<domain::Manuscript>(req, trace, check).value;
    merged.included = manuscript.included;
    merged.included.push_back(segment.topic_index);
    merged.round = 0;
    merged.status = domain::ArtifactStatus::in_review;
    return merged;
}

domain::ManuscriptFeedback review_manuscript(AgentContext& ctx,
                                             const domain::Manuscript& manuscript) {
    require_valid(domain::validate(manuscript, ctx.cfg.i_max), "manuscript");

    Values values = {{"manuscript", manuscript.text}};
    auto req = make_request(ctx, "pr4", "PR4", "user", values);
    TraceContext trace{Stage::Rr, std::nullopt, manuscript.round};
    auto check = [](const domain::ManuscriptFeedback& v) { return domain::validate(v); };
    return ctx.gw.complete_structured<domain::ManuscriptFeedback>(req, trace, check).value;
}

domain::Manuscript revise_manuscript(AgentContext& ctx, const domain::Manuscript& manuscript,
                                     const domain::ManuscriptFeedback& feedback) {
    require_valid(domain::validate(manuscript, ctx.cfg.i_max), "manuscript");
    require(!feedback.pass(), "feedback passed; nothing to revise");
    require(manuscript.round < ctx.cfg.i_max, "revision budget exhausted");

    Values values = {{"manuscript", manuscript.text}, {"feedback", feedback.suggestions}};
    auto req = make_request(ctx, "ed2", "ED2", "user.revise", values);
    TraceContext trace{Stage::Rr, std::nullopt, manuscript.round + 1};
    auto check = [](const domain::Manuscript& v) {
        domain::ValidationReport report;
        if (v.text.empty()) report.add("manuscript text must be non-empty");
        return report;
    };
    auto revised = ctx.gw.complete_structured<domain::Manuscript>(req, trace, check).value;
    revised.included = manuscript.included;
    revised.round = manuscript.round + 1;
    revised.status = domain::ArtifactStatus::in_review;
    return revised;
}

} // namespace interpcast::agents
