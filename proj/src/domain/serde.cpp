#include "interpcast/domain/serde.hpp"

#include "interpcast/errors.hpp"

#include <algorithm>
#include <cctype>

namespace interpcast::domain {

const char* to_string(Language lang) {
    return lang == Language::zh ? "zh" : "en";
}

const char* to_string(Flag flag) {
    return flag == Flag::yes ? "Yes" : "No";
}

const char* to_string(ArtifactStatus status) {
    switch (status) {
    case ArtifactStatus::in_review: return "in_review";
    case ArtifactStatus::accepted: return "accepted";
    case ArtifactStatus::accepted_with_warnings: return "accepted_with_warnings";
    }
    return "in_review";
}

Language language_from_string(const std::string& s) {
    if (s == "zh") return Language::zh;
    if (s == "en") return Language::en;
    throw ValidationError("unknown language \"" + s + "\" (expected zh or en)");
}

Flag flag_from_string(const std::string& s) {
    std::string t;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    if (t == "yes" || t == "\xe6\x98\xaf") return Flag::yes; // 是
    if (t == "no" || t == "\xe5\x90\xa6") return Flag::no;   // 否
    throw ValidationError("unknown flag value \"" + s + "\" (expected Yes/No)");
}

ArtifactStatus status_from_string(const std::string& s) {
    if (s == "in_review") return ArtifactStatus::in_review;
    if (s == "accepted") return ArtifactStatus::accepted;
    if (s == "accepted_with_warnings") return ArtifactStatus::accepted_with_warnings;
    throw ValidationError("unknown status \"" + s + "\"");
}

namespace {

std::string require_string(const ijson& j, const char* key) {
    if (!j.contains(key)) {
        throw ValidationError(std::string("missing field \"") + key + "\"");
    }
    const auto& v = j.at(key);
    if (!v.is_string()) {
        throw ValidationError(std::string("field \"") + key + "\" must be a string");
    }
    return v.get<std::string>();
}

int require_int(const ijson& j, const char* key) {
    if (!j.contains(key)) {
        throw ValidationError(std::string("missing field \"") + key + "\"");
    }
    const auto& v = j.at(key);
    if (!v.is_number_integer()) {
        throw ValidationError(std::string("field \"") + key + "\" must be an integer");
    }
    return v.get<int>();
}

Flag require_flag(const ijson& j, const char* key) {
    if (!j.contains(key)) {
        throw ValidationError(std::string("missing field \"") + key + "\"");
    }
    const auto& v = j.at(key);
    if (v.is_boolean()) {
        return v.get<bool>() ? Flag::yes : Flag::no;
    }
    if (v.is_string()) {
        return flag_from_string(v.get<std::string>());
    }
    throw ValidationError(std::string("field \"") + key + "\" must be Yes/No");
}

std::string optional_string(const ijson& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return {};
    if (!j.at(key).is_string()) {
        throw ValidationError(std::string("field \"") + key + "\" must be a string");
    }
    return j.at(key).get<std::string>();
}

int optional_int(const ijson& j, const char* key, int fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    if (!j.at(key).is_number_integer()) {
        throw ValidationError(std::string("field \"") + key + "\" must be an integer");
    }
    return j.at(key).get<int>();
}

ArtifactStatus optional_status(const ijson& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return ArtifactStatus::in_review;
    return status_from_string(require_string(j, key));
}

template <typename T>
std::vector<T> require_array(const ijson& j, const char* key) {
    if (!j.contains(key)) {
        throw ValidationError(std::string("missing field \"") + key + "\"");
    }
    const auto& v = j.at(key);
    if (!v.is_array()) {
        throw ValidationError(std::string("field \"") + key + "\" must be an array");
    }
    std::vector<T> out;
    out.reserve(v.size());
    for (const auto& item : v) {
        out.push_back(item.template get<T>());
    }
    return out;
}

} // namespace

void to_json(ijson& j, const Chapter& v) {
    j = ijson{{"book_id", v.book_id},
              {"chapter_id", v.chapter_id},
              {"title", v.title},
              {"body", v.body},
              {"language", to_string(v.language)}};
}

void from_json(const ijson& j, Chapter& v) {
    v.book_id = require_string(j, "book_id");
    v.chapter_id = require_string(j, "chapter_id");
    v.title = require_string(j, "title");
    v.body = require_string(j, "body");
    v.language = language_from_string(require_string(j, "language"));
}

void to_json(ijson& j, const Topic& v) {
    j = ijson{{"index", v.index}, {"statement", v.statement}};
}

void from_json(const ijson& j, Topic& v) {
    v.index = require_int(j, "index");
    v.statement = require_string(j, "statement");
}

void to_json(ijson& j, const CaseSketch& v) {
    j = ijson{{"topic_index", v.topic_index}, {"text", v.text}};
}

void from_json(const ijson& j, CaseSketch& v) {
    v.topic_index = require_int(j, "topic_index");
    v.text = require_string(j, "text");
}

void to_json(ijson& j, const TopicCaseSet& v) {
    j = ijson{{"topics", v.topics}, {"cases", v.cases}};
}

void from_json(const ijson& j, TopicCaseSet& v) {
    v.topics = require_array<Topic>(j, "topics");
    v.cases = require_array<CaseSketch>(j, "cases");
}

void to_json(ijson& j, const PairVerdict& v) {
    j = ijson{{"topic_index", v.topic_index}, {"valid", v.valid}, {"reasons", v.reasons}};
}

void from_json(const ijson& j, PairVerdict& v) {
    v.topic_index = require_int(j, "topic_index");
    v.valid = require_flag(j, "valid") == Flag::yes;
    v.reasons = optional_string(j, "reasons");
}

void to_json(ijson& j, const PairVerdictList& v) {
    j = ijson{{"verdicts", v.verdicts}};
}

void from_json(const ijson& j, PairVerdictList& v) {
    v.verdicts = require_array<PairVerdict>(j, "verdicts");
}

void to_json(ijson& j, const EnrichedCase& v) {
    j = ijson{{"topic_index", v.topic_index},
              {"text", v.text},
              {"added_background", v.added_background}};
}

void from_json(const ijson& j, EnrichedCase& v) {
    v.topic_index = require_int(j, "topic_index");
    v.text = require_string(j, "text");
    v.added_background = optional_string(j, "added_background");
}

void to_json(ijson& j, const EnrichedCaseList& v) {
    j = ijson{{"cases", v.cases}};
}

void from_json(const ijson& j, EnrichedCaseList& v) {
    v.cases = require_array<EnrichedCase>(j, "cases");
}

void to_json(ijson& j, const Expansion& v) {
    j = ijson{{"topic_index", v.topic_index}, {"text", v.text}};
}

void from_json(const ijson& j, Expansion& v) {
    v.topic_index = require_int(j, "topic_index");
    v.text = require_string(j, "text");
}

void to_json(ijson& j, const Argument& v) {
    j = ijson{{"topic_index", v.topic_index}, {"text", v.text}};
}

void from_json(const ijson& j, Argument& v) {
    v.topic_index = require_int(j, "topic_index");
    v.text = require_string(j, "text");
}

void to_json(ijson& j, const TopicDraft& v) {
    j = ijson{{"topic_index", v.topic_index},
              {"text", v.text},
              {"round", v.round},
              {"status", to_string(v.status)}};
}

void from_json(const ijson& j, TopicDraft& v) {
    v.topic_index = require_int(j, "topic_index");
    v.text = require_string(j, "text");
    v.round = optional_int(j, "round", 0);
    v.status = optional_status(j, "status");
}

void to_json(ijson& j, const DraftFeedback& v) {
    j = ijson{{"compt", to_string(v.compt)},
              {"log", to_string(v.log)},
              {"suggestions", v.suggestions}};
}

void from_json(const ijson& j, DraftFeedback& v) {
    v.compt = require_flag(j, "compt");
    v.log = require_flag(j, "log");
    v.suggestions = optional_string(j, "suggestions");
}

void to_json(ijson& j, const OralScript& v) {
    j = ijson{{"topic_index", v.topic_index},
              {"text", v.text},
              {"round", v.round},
              {"status", to_string(v.status)}};
}

void from_json(const ijson& j, OralScript& v) {
    v.topic_index = require_int(j, "topic_index");
    v.text = require_string(j, "text");
    v.round = optional_int(j, "round", 0);
    v.status = optional_status(j, "status");
}

void to_json(ijson& j, const OralFeedback& v) {
    j = ijson{{"natural", to_string(v.natural)},
              {"fluent", to_string(v.fluent)},
              {"suggestions", v.suggestions}};
}

void from_json(const ijson& j, OralFeedback& v) {
    v.natural = require_flag(j, "natural");
    v.fluent = require_flag(j, "fluent");
    v.suggestions = optional_string(j, "suggestions");
}

void to_json(ijson& j, const Manuscript& v) {
    j = ijson{{"text", v.text},
              {"included", v.included},
              {"round", v.round},
              {"status", to_string(v.status)}};
}

void from_json(const ijson& j, Manuscript& v) {
    v.text = require_string(j, "text");
    v.included.clear();
    if (j.contains("included") && !j.at("included").is_null()) {
        if (!j.at("included").is_array()) {
            throw ValidationError("field \"included\" must be an array");
        }
        for (const auto& item : j.at("included")) {
            if (!item.is_number_integer()) {
                throw ValidationError("field \"included\" must hold integers");
            }
            v.included.push_back(item.get<int>());
        }
    }
    v.round = optional_int(j, "round", 0);
    v.status = optional_status(j, "status");
}

void to_json(ijson& j, const ManuscriptFeedback& v) {
    j = ijson{{"coherent", to_string(v.coherent)},
              {"fluent", to_string(v.fluent)},
              {"natural", to_string(v.natural)},
              {"suggestions", v.suggestions}};
}

void from_json(const ijson& j, ManuscriptFeedback& v) {
    v.coherent = require_flag(j, "coherent");
    v.fluent = require_flag(j, "fluent");
    v.natural = require_flag(j, "natural");
    v.suggestions = optional_string(j, "suggestions");
}

void to_json(ijson& j, const AudioConfig& v) {
    j = ijson{{"gap_ms", v.gap_ms},
              {"transition_ms", v.transition_ms},
              {"intro_wav", v.intro_wav},
              {"outro_wav", v.outro_wav},
              {"tone_ms_per_char", v.tone_ms_per_char},
              {"tts_backend", v.tts_backend}};
}

void from_json(const ijson& j, AudioConfig& v) {
    v.gap_ms = require_int(j, "gap_ms");
    v.transition_ms = optional_int(j, "transition_ms", 500);
    v.intro_wav = optional_string(j, "intro_wav");
    v.outro_wav = optional_string(j, "outro_wav");
    v.tone_ms_per_char = require_int(j, "tone_ms_per_char");
    v.tts_backend = require_string(j, "tts_backend");
}

void to_json(ijson& j, const PipelineConfig& v) {
    j = ijson{{"i_max", v.i_max},
              {"temperature", v.temperature},
              {"max_tokens", v.max_tokens},
              {"model", v.model},
              {"parse_retries", v.parse_retries},
              {"topic_cap", v.topic_cap},
              {"prompt_language", to_string(v.prompt_language)},
              {"max_chapter_chars", v.max_chapter_chars},
              {"tts_chunk_chars", v.tts_chunk_chars},
              {"sample_rate_hz", v.sample_rate_hz},
              {"prompt_dir", v.prompt_dir},
              {"audio", v.audio}};
}

void from_json(const ijson& j, PipelineConfig& v) {
    v.i_max = require_int(j, "i_max");
    if (!j.contains("temperature") || !j.at("temperature").is_number()) {
        throw ValidationError("field \"temperature\" must be a number");
    }
    v.temperature = j.at("temperature").get<double>();
    v.max_tokens = require_int(j, "max_tokens");
    v.model = require_string(j, "model");
    v.parse_retries = require_int(j, "parse_retries");
    v.topic_cap = require_int(j, "topic_cap");
    v.prompt_language = language_from_string(require_string(j, "prompt_language"));
    v.max_chapter_chars = require_int(j, "max_chapter_chars");
    v.tts_chunk_chars = require_int(j, "tts_chunk_chars");
    v.sample_rate_hz = require_int(j, "sample_rate_hz");
    v.prompt_dir = require_string(j, "prompt_dir");
    v.audio = j.contains("audio") ? j.at("audio").get<AudioConfig>() : AudioConfig{};
}

} // namespace interpcast::domain
