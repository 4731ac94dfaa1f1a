#pragma once

#include "interpcast/domain/config.hpp"
#include "interpcast/domain/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace interpcast::domain {

// Validation failure is data, not an error: validate() is total and returns
// every violated invariant for the given artifact.
struct ValidationReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }

    void add(std::string v) { violations.push_back(std::move(v)); }
    void merge(const ValidationReport& other) {
        violations.insert(violations.end(), other.violations.begin(), other.violations.end());
    }
    std::string joined() const {
        std::string out;
        for (const auto& v : violations) {
            if (!out.empty()) out += "; ";
            out += v;
        }
        return out;
    }
};

// Invariants that depend on run configuration (revision budget, topic cap,
// chapter size) take the configured bound as an optional argument; without
// it only the context-free part is checked.

ValidationReport validate(const Chapter& v, std::optional<int> max_chapter_chars = std::nullopt);
ValidationReport validate(const TopicCaseSet& v, int topic_cap = 3);
ValidationReport validate(const PairVerdict& v);
ValidationReport validate(const PairVerdictList& v);
ValidationReport validate(const EnrichedCase& v);
ValidationReport validate(const EnrichedCaseList& v);
ValidationReport validate(const Expansion& v);
ValidationReport validate(const Argument& v);
ValidationReport validate(const TopicDraft& v, std::optional<int> i_max = std::nullopt);
ValidationReport validate(const DraftFeedback& v);
ValidationReport validate(const OralScript& v, std::optional<int> i_max = std::nullopt);
ValidationReport validate(const OralFeedback& v);
ValidationReport validate(const Manuscript& v, std::optional<int> i_max = std::nullopt);
ValidationReport validate(const ManuscriptFeedback& v);
ValidationReport validate(const PipelineConfig& v);

} // namespace interpcast::domain
