#pragma once

#include <compare>
#include <string>
#include <vector>

namespace interpcast::domain {

// Every type here is an immutable value: the pipeline advances by building
// new values, never by mutating shared state.

enum class Language { zh, en };

// Canonical form of the reviewers' Yes/No answers. Parsers accept
// case-insensitive yes/no and 是/否; serialization always emits "Yes"/"No".
enum class Flag { yes, no };

enum class ArtifactStatus { in_review, accepted, accepted_with_warnings };

const char* to_string(Language lang);
const char* to_string(Flag flag);
const char* to_string(ArtifactStatus status);

Language language_from_string(const std::string& s);
Flag flag_from_string(const std::string& s);
ArtifactStatus status_from_string(const std::string& s);

// One chapter of a book, the unit the whole pipeline operates on.
struct Chapter {
    std::string book_id;
    std::string chapter_id;
    std::string title;
    std::string body;
    Language language = Language::zh;

    bool operator==(const Chapter&) const = default;
};

struct Topic {
    int index = 0; // 1-based
    std::string statement;

    bool operator==(const Topic&) const = default;
};

struct CaseSketch {
    int topic_index = 0;
    std::string text;

    bool operator==(const CaseSketch&) const = default;
};

// Core topics plus their preliminary supporting cases, one case per topic.
struct TopicCaseSet {
    std::vector<Topic> topics;
    std::vector<CaseSketch> cases;

    bool operator==(const TopicCaseSet&) const = default;
};

// One reviewer verdict on a topic-case pair.
struct PairVerdict {
    int topic_index = 0;
    bool valid = false;
    std::string reasons; // empty allowed only when valid

    bool operator==(const PairVerdict&) const = default;
};

// Wire shape of the pair-review response: one verdict per reviewed pair.
struct PairVerdictList {
    std::vector<PairVerdict> verdicts;

    bool operator==(const PairVerdictList&) const = default;
};

// A case augmented with background and key details.
struct EnrichedCase {
    int topic_index = 0;
    std::string text;
    std::string added_background;

    bool operator==(const EnrichedCase&) const = default;
};

// Wire shape of the enrichment response.
struct EnrichedCaseList {
    std::vector<EnrichedCase> cases;

    bool operator==(const EnrichedCaseList&) const = default;
};

// Personal insights / real-life perspectives for one topic.
struct Expansion {
    int topic_index = 0;
    std::string text;

    bool operator==(const Expansion&) const = default;
};

// Causal/logical reasoning connecting a case to its topic.
struct Argument {
    int topic_index = 0;
    std::string text;

    bool operator==(const Argument&) const = default;
};

// Per-topic preliminary interpretation draft under review.
struct TopicDraft {
    int topic_index = 0;
    std::string text;
    int round = 0; // 0 = initial editor output
    ArtifactStatus status = ArtifactStatus::in_review;

    bool operator==(const TopicDraft&) const = default;
};

// Draft review: completeness + logicality, suggestions only on failure.
struct DraftFeedback {
    Flag compt = Flag::no;
    Flag log = Flag::no;
    std::string suggestions;

    bool pass() const { return compt == Flag::yes && log == Flag::yes; }
    bool operator==(const DraftFeedback&) const = default;
};

// Conversational rewrite of a draft.
struct OralScript {
    int topic_index = 0;
    std::string text;
    int round = 0;
    ArtifactStatus status = ArtifactStatus::in_review;

    bool operator==(const OralScript&) const = default;
};

// Oral review: naturalness + fluency.
struct OralFeedback {
    Flag natural = Flag::no;
    Flag fluent = Flag::no;
    std::string suggestions;

    bool pass() const { return natural == Flag::yes && fluent == Flag::yes; }
    bool operator==(const OralFeedback&) const = default;
};

// The full-chapter manuscript built by incrementally integrating oral
// segments; `included` records which segments are in, in input order.
struct Manuscript {
    std::string text;
    std::vector<int> included;
    int round = 0;
    ArtifactStatus status = ArtifactStatus::in_review;

    bool operator==(const Manuscript&) const = default;
};

// Whole-manuscript review: coherence + fluency + naturalness.
struct ManuscriptFeedback {
    Flag coherent = Flag::no;
    Flag fluent = Flag::no;
    Flag natural = Flag::no;
    std::string suggestions;

    bool pass() const {
        return coherent == Flag::yes && fluent == Flag::yes && natural == Flag::yes;
    }
    bool operator==(const ManuscriptFeedback&) const = default;
};

} // namespace interpcast::domain
