#pragma once

#include "interpcast/domain/config.hpp"
#include "interpcast/domain/types.hpp"
#include "interpcast/json.hpp"

namespace interpcast::domain {

// Canonical JSON for every artifact: UTF-8, stable field order, enum values
// as canonical strings. serialize ∘ deserialize == identity on valid values.
//
// Parsing is forgiving where real model output needs it: flag fields accept
// case-insensitive yes/no, 是/否 and JSON booleans; round/status fields are
// optional and default to a fresh in-review artifact.

void to_json(ijson& j, const Chapter& v);
void from_json(const ijson& j, Chapter& v);

void to_json(ijson& j, const Topic& v);
void from_json(const ijson& j, Topic& v);

void to_json(ijson& j, const CaseSketch& v);
void from_json(const ijson& j, CaseSketch& v);

void to_json(ijson& j, const TopicCaseSet& v);
void from_json(const ijson& j, TopicCaseSet& v);

void to_json(ijson& j, const PairVerdict& v);
void from_json(const ijson& j, PairVerdict& v);

void to_json(ijson& j, const PairVerdictList& v);
void from_json(const ijson& j, PairVerdictList& v);

void to_json(ijson& j, const EnrichedCase& v);
void from_json(const ijson& j, EnrichedCase& v);

void to_json(ijson& j, const EnrichedCaseList& v);
void from_json(const ijson& j, EnrichedCaseList& v);

void to_json(ijson& j, const Expansion& v);
void from_json(const ijson& j, Expansion& v);

void to_json(ijson& j, const Argument& v);
void from_json(const ijson& j, Argument& v);

void to_json(ijson& j, const TopicDraft& v);
void from_json(const ijson& j, TopicDraft& v);

void to_json(ijson& j, const DraftFeedback& v);
void from_json(const ijson& j, DraftFeedback& v);

void to_json(ijson& j, const OralScript& v);
void from_json(const ijson& j, OralScript& v);

void to_json(ijson& j, const OralFeedback& v);
void from_json(const ijson& j, OralFeedback& v);

void to_json(ijson& j, const Manuscript& v);
void from_json(const ijson& j, Manuscript& v);

void to_json(ijson& j, const ManuscriptFeedback& v);
void from_json(const ijson& j, ManuscriptFeedback& v);

void to_json(ijson& j, const AudioConfig& v);
void from_json(const ijson& j, AudioConfig& v);

void to_json(ijson& j, const PipelineConfig& v);
void from_json(const ijson& j, PipelineConfig& v);

} // namespace interpcast::domain
