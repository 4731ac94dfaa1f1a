#pragma once

#include "interpcast/json.hpp"

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace interpcast {

enum class Stage { Tci, Pi, Or, Rr, Audio };

const char* to_string(Stage stage);
Stage stage_from_string(const std::string& s);

// One provider call (including failed attempts of a structured re-ask) or
// one TTS synthesis call. Payloads are recorded as content digests only.
struct TraceRecord {
    std::uint64_t seq = 0;
    Stage stage = Stage::Tci;
    std::string role;
    std::optional<int> topic_index;
    int round = 0;
    std::string request_sha256;
    std::string response_sha256;
    int attempts = 1; // attempt ordinal within one structured call

    bool operator==(const TraceRecord&) const = default;
};

void to_json(ijson& j, const TraceRecord& r);
void from_json(const ijson& j, TraceRecord& r);

// Where in the pipeline a gateway call happens; stamped onto trace records.
struct TraceContext {
    Stage stage = Stage::Tci;
    std::optional<int> topic_index;
    int round = 0;
};

// Append-only record of every call made during one chapter run. In-memory
// order is issue order; the persisted form is re-sorted by the canonical
// key (stage, topic_index, round, role, attempts) and renumbered, so runs
// are comparable regardless of scheduling.
class PipelineTrace {
public:
    void append(TraceRecord r);
    void append_slice(const std::vector<TraceRecord>& slice);

    std::size_t size() const;
    std::vector<TraceRecord> records() const;
    std::vector<TraceRecord> slice_from(std::size_t start) const;

    std::vector<TraceRecord> canonical() const;
    std::string canonical_jsonl() const;

private:
    mutable std::mutex mutex_;
    std::vector<TraceRecord> records_;
};

} // namespace interpcast
