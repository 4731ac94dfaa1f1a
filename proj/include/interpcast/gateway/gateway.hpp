#pragma once

#include "interpcast/domain/config.hpp"
#include "interpcast/domain/serde.hpp"
#include "interpcast/domain/validate.hpp"
#include "interpcast/errors.hpp"
#include "interpcast/gateway/provider.hpp"
#include "interpcast/json.hpp"
#include "interpcast/sha256.hpp"
#include "interpcast/trace.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace interpcast::gateway {

struct ChatRequest {
    std::string system_prompt;
    std::string user_prompt;
    double temperature = 1.3;
    int max_tokens = 8192;
    std::string role_tag;
};

struct ChatResponse {
    std::string text;
    std::string provider_id;
    long long latency_ms = 0;
    bool truncated = false;
};

template <typename T>
struct Structured {
    T value;
    int attempts = 1; // total provider calls used by complete_structured
};

bool known_role_tag(std::string_view tag);

// Returns the first balanced top-level JSON object embedded in text,
// tolerating code fences and surrounding prose.
std::optional<std::string> extract_json_object(std::string_view text);

// Maps response types to the schema names used in re-ask prompts and in
// docs/schemas. Parsing and shape checks come from the domain layer.
template <typename T>
struct SchemaTraits;

#define INTERPCAST_SCHEMA(type, schema)                                                            \
    template <>                                                                                    \
    struct SchemaTraits<type> {                                                                    \
        static constexpr const char* name = schema;                                                \
    }

INTERPCAST_SCHEMA(domain::TopicCaseSet, "topic_case_set");
INTERPCAST_SCHEMA(domain::PairVerdictList, "pair_verdict_list");
INTERPCAST_SCHEMA(domain::EnrichedCaseList, "enriched_case_list");
INTERPCAST_SCHEMA(domain::Expansion, "expansion");
INTERPCAST_SCHEMA(domain::Argument, "argument");
INTERPCAST_SCHEMA(domain::TopicDraft, "topic_draft");
INTERPCAST_SCHEMA(domain::DraftFeedback, "draft_feedback");
INTERPCAST_SCHEMA(domain::OralScript, "oral_script");
INTERPCAST_SCHEMA(domain::OralFeedback, "oral_feedback");
INTERPCAST_SCHEMA(domain::Manuscript, "manuscript");
INTERPCAST_SCHEMA(domain::ManuscriptFeedback, "manuscript_feedback");

#undef INTERPCAST_SCHEMA

// Single funnel for model calls: builds the wire request, retries transient
// transport failures, re-asks on malformed structured replies, and records
// every attempt in the trace.
class Gateway {
public:
    Gateway(Provider& provider, PipelineTrace& trace, const domain::PipelineConfig& cfg);

    ChatResponse complete(const ChatRequest& req, const TraceContext& ctx, int attempt = 1);

    // Resume support: skip provider entries already covered by replayed
    // trace records.
    void fast_forward(std::size_t n) { provider_.fast_forward(n); }

    template <typename T>
    Structured<T> complete_structured(
        const ChatRequest& req, const TraceContext& ctx,
        const std::function<domain::ValidationReport(const T&)>& check = {});

    // Test hook; replaces the inter-retry sleep.
    void set_sleeper(std::function<void(std::chrono::milliseconds)> sleeper);

private:
    ijson build_body(const ChatRequest& req) const;
    void record(const TraceContext& ctx, const std::string& role, const std::string& request_body,
                const std::string& response_text, int attempt);

    Provider& provider_;
    PipelineTrace& trace_;
    const domain::PipelineConfig& cfg_;
    std::function<void(std::chrono::milliseconds)> sleep_;
};

template <typename T>
Structured<T> Gateway::complete_structured(
    const ChatRequest& req, const TraceContext& ctx,
    const std::function<domain::ValidationReport(const T&)>& check) {
    const int max_attempts = 1 + cfg_.parse_retries;
    std::string last_problem;
    bool last_was_parse = true;
    std::vector<std::string> last_violations;

    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        ChatRequest asked = req;
        if (attempt > 1) {
            asked.user_prompt += "\n\nYour previous reply could not be used: " + last_problem +
                                 "\nReply again with exactly one JSON object matching the " +
                                 std::string(SchemaTraits<T>::name) +
                                 " schema and no surrounding prose.";
        }
        ChatResponse resp = complete(asked, ctx, attempt);

        auto extracted = extract_json_object(resp.text);
        if (!extracted) {
            last_problem = "no JSON object found in the reply";
            last_was_parse = true;
            continue;
        }
        ijson parsed = ijson::parse(*extracted, nullptr, false);
        if (parsed.is_discarded()) {
            last_problem = "the JSON object could not be parsed";
            last_was_parse = true;
            continue;
        }

        try {
            T value = parsed.get<T>();
            domain::ValidationReport report;
            if (check) {
                report = check(value);
            } else {
                report = domain::validate(value);
            }
            if (report.ok()) return {std::move(value), attempt};
            last_violations = report.violations;
            last_problem = report.joined();
            last_was_parse = false;
        } catch (const ValidationError& e) {
            last_violations = e.violations();
            if (last_violations.empty()) last_violations = {e.what()};
            last_problem = e.what();
            last_was_parse = false;
        }
    }

    if (last_was_parse) throw ParseError(req.role_tag + ": " + last_problem);
    for (const auto& v : last_violations) {
        if (v.find("missing verdict") != std::string::npos ||
            v.find("missing enriched case") != std::string::npos) {
            throw MissingVerdict(req.role_tag, last_violations);
        }
    }
    throw ValidationError(req.role_tag, last_violations);
}

} // namespace interpcast::gateway
