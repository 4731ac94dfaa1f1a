#include "interpcast/domain/validate.hpp"

#include "interpcast/text.hpp"

#include <set>

namespace interpcast::domain {

namespace {

void check_text(ValidationReport& r, const std::string& text, const char* what) {
    if (text::collapse_spaces(text).empty()) {
        r.violations.push_back(std::string(what) + " must be non-empty");
    }
}

void check_round(ValidationReport& r, int round, std::optional<int> i_max) {
    if (round < 0) {
        r.violations.push_back("round must be >= 0");
    }
    if (i_max && round > *i_max) {
        r.violations.push_back("round " + std::to_string(round) + " exceeds i_max " +
                               std::to_string(*i_max));
    }
}

void check_warning_round(ValidationReport& r, ArtifactStatus status, int round,
                         std::optional<int> i_max) {
    if (i_max && status == ArtifactStatus::accepted_with_warnings && round != *i_max) {
        r.violations.push_back("accepted_with_warnings requires round == i_max");
    }
}

// Shared iff-invariant of all three feedback shapes.
void check_suggestions(ValidationReport& r, bool pass, const std::string& suggestions) {
    bool empty = text::collapse_spaces(suggestions).empty();
    if (pass && !empty) {
        r.violations.push_back("suggestions must be empty on pass");
    }
    if (!pass && empty) {
        r.violations.push_back("suggestions required when any criterion fails");
    }
}

} // namespace

ValidationReport validate(const Chapter& v, std::optional<int> max_chapter_chars) {
    ValidationReport r;
    if (v.book_id.empty()) r.violations.push_back("book_id must be non-empty");
    if (v.chapter_id.empty()) r.violations.push_back("chapter_id must be non-empty");
    if (text::normalize_whitespace(v.body).empty()) {
        r.violations.push_back("body must be non-empty after whitespace normalization");
    }
    if (max_chapter_chars) {
        auto n = text::codepoint_count(v.body);
        if (n > static_cast<std::size_t>(*max_chapter_chars)) {
            r.violations.push_back("body length " + std::to_string(n) +
                                   " exceeds max_chapter_chars " +
                                   std::to_string(*max_chapter_chars));
        }
    }
    return r;
}

ValidationReport validate(const TopicCaseSet& v, int topic_cap) {
    ValidationReport r;
    auto n = v.topics.size();
    if (n < 1 || n > static_cast<std::size_t>(topic_cap)) {
        r.violations.push_back("topic count out of range [1," + std::to_string(topic_cap) + "]");
    }
    if (v.cases.size() != n) {
        r.violations.push_back("topic and case counts differ");
        return r; // pairwise checks below assume equal length
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (v.topics[k].index != static_cast<int>(k) + 1) {
            r.violations.push_back("topic indices must be 1..n with no gaps");
            break;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (v.cases[k].topic_index != v.topics[k].index) {
            r.violations.push_back("case " + std::to_string(k + 1) +
                                   " does not match its topic index");
        }
        if (text::collapse_spaces(v.topics[k].statement).empty()) {
            r.violations.push_back("topic " + std::to_string(v.topics[k].index) +
                                   " statement must be non-empty");
        }
        if (text::collapse_spaces(v.cases[k].text).empty()) {
            r.violations.push_back("case " + std::to_string(v.cases[k].topic_index) +
                                   " text must be non-empty");
        }
    }
    return r;
}

ValidationReport validate(const PairVerdict& v) {
    ValidationReport r;
    if (v.topic_index < 1) r.violations.push_back("topic_index must be >= 1");
    if (!v.valid && text::collapse_spaces(v.reasons).empty()) {
        r.violations.push_back("reasons required for an invalid pair");
    }
    return r;
}

ValidationReport validate(const PairVerdictList& v) {
    ValidationReport r;
    std::set<int> seen;
    for (const auto& verdict : v.verdicts) {
        auto vr = validate(verdict);
        r.violations.insert(r.violations.end(), vr.violations.begin(), vr.violations.end());
        if (!seen.insert(verdict.topic_index).second) {
            r.violations.push_back("duplicate verdict for topic_index " +
                                   std::to_string(verdict.topic_index));
        }
    }
    return r;
}

ValidationReport validate(const EnrichedCase& v) {
    ValidationReport r;
    if (v.topic_index < 1) r.violations.push_back("topic_index must be >= 1");
    check_text(r, v.text, "text");
    return r;
}

ValidationReport validate(const EnrichedCaseList& v) {
    ValidationReport r;
    std::set<int> seen;
    for (const auto& c : v.cases) {
        auto cr = validate(c);
        r.violations.insert(r.violations.end(), cr.violations.begin(), cr.violations.end());
        if (!seen.insert(c.topic_index).second) {
            r.violations.push_back("duplicate enriched case for topic_index " +
                                   std::to_string(c.topic_index));
        }
    }
    return r;
}

ValidationReport validate(const Expansion& v) {
    ValidationReport r;
    if (v.topic_index < 1) r.violations.push_back("topic_index must be >= 1");
    check_text(r, v.text, "text");
    return r;
}

ValidationReport validate(const Argument& v) {
    ValidationReport r;
    if (v.topic_index < 1) r.violations.push_back("topic_index must be >= 1");
    check_text(r, v.text, "text");
    return r;
}

ValidationReport validate(const TopicDraft& v, std::optional<int> i_max) {
    ValidationReport r;
    if (v.topic_index < 1) r.violations.push_back("topic_index must be >= 1");
    check_text(r, v.text, "text");
    check_round(r, v.round, i_max);
    check_warning_round(r, v.status, v.round, i_max);
    return r;
}

ValidationReport validate(const DraftFeedback& v) {
    ValidationReport r;
    check_suggestions(r, v.pass(), v.suggestions);
    return r;
}

ValidationReport validate(const OralScript& v, std::optional<int> i_max) {
    ValidationReport r;
    if (v.topic_index < 1) r.violations.push_back("topic_index must be >= 1");
    check_text(r, v.text, "text");
    check_round(r, v.round, i_max);
    check_warning_round(r, v.status, v.round, i_max);
    return r;
}

ValidationReport validate(const OralFeedback& v) {
    ValidationReport r;
    check_suggestions(r, v.pass(), v.suggestions);
    return r;
}

ValidationReport validate(const Manuscript& v, std::optional<int> i_max) {
    ValidationReport r;
    check_text(r, v.text, "text");
    std::set<int> seen;
    for (int idx : v.included) {
        if (idx < 1) r.violations.push_back("included indices must be >= 1");
        if (!seen.insert(idx).second) {
            r.violations.push_back("included lists topic_index " + std::to_string(idx) + " twice");
        }
    }
    if (v.included.empty()) {
        r.violations.push_back("included must list at least one segment");
    }
    check_round(r, v.round, i_max);
    check_warning_round(r, v.status, v.round, i_max);
    return r;
}

ValidationReport validate(const ManuscriptFeedback& v) {
    ValidationReport r;
    check_suggestions(r, v.pass(), v.suggestions);
    return r;
}

ValidationReport validate(const PipelineConfig& v) {
    ValidationReport r;
    if (v.i_max < 0) r.violations.push_back("i_max must be >= 0");
    if (v.parse_retries < 0) r.violations.push_back("parse_retries must be >= 0");
    if (v.topic_cap < 1) r.violations.push_back("topic_cap must be >= 1");
    if (v.temperature < 0.0) r.violations.push_back("temperature must be >= 0");
    if (v.max_tokens < 1) r.violations.push_back("max_tokens must be >= 1");
    if (v.max_chapter_chars < 1) r.violations.push_back("max_chapter_chars must be >= 1");
    if (v.tts_chunk_chars < 1) r.violations.push_back("tts_chunk_chars must be >= 1");
    if (v.sample_rate_hz < 1) r.violations.push_back("sample_rate_hz must be >= 1");
    if (v.audio.gap_ms < 0) r.violations.push_back("gap_ms must be >= 0");
    if (v.audio.tone_ms_per_char < 1) r.violations.push_back("tone_ms_per_char must be >= 1");
    if (v.audio.tts_backend != "tone" && v.audio.tts_backend != "http") {
        r.violations.push_back("tts_backend must be tone or http");
    }
    return r;
}

} // namespace interpcast::domain
