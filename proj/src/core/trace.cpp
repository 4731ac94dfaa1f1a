#include "interpcast/trace.hpp"

#include "interpcast/errors.hpp"

#include <algorithm>
#include <limits>

namespace interpcast {

const char* to_string(Stage stage) {
    switch (stage) {
    case Stage::Tci: return "TCI";
    case Stage::Pi: return "PI";
    case Stage::Or: return "OR";
    case Stage::Rr: return "RR";
    case Stage::Audio: return "AUDIO";
    }
    throw Error("unknown stage");
}

Stage stage_from_string(const std::string& s) {
    if (s == "TCI") return Stage::Tci;
    if (s == "PI") return Stage::Pi;
    if (s == "OR") return Stage::Or;
    if (s == "RR") return Stage::Rr;
    if (s == "AUDIO") return Stage::Audio;
    throw Error("unknown stage: " + s);
}

void to_json(ijson& j, const TraceRecord& r) {
    j = ijson::object();
    j["seq"] = r.seq;
    j["stage"] = to_string(r.stage);
    j["role"] = r.role;
    if (r.topic_index) {
        j["topic_index"] = *r.topic_index;
    } else {
        j["topic_index"] = nullptr;
    }
    j["round"] = r.round;
    j["request_sha256"] = r.request_sha256;
    j["response_sha256"] = r.response_sha256;
    j["attempts"] = r.attempts;
}

void from_json(const ijson& j, TraceRecord& r) {
    r.seq = j.at("seq").get<std::uint64_t>();
    r.stage = stage_from_string(j.at("stage").get<std::string>());
    r.role = j.at("role").get<std::string>();
    if (j.contains("topic_index") && !j.at("topic_index").is_null()) {
        r.topic_index = j.at("topic_index").get<int>();
    } else {
        r.topic_index.reset();
    }
    r.round = j.at("round").get<int>();
    r.request_sha256 = j.at("request_sha256").get<std::string>();
    r.response_sha256 = j.at("response_sha256").get<std::string>();
    r.attempts = j.value("attempts", 1);
}

void PipelineTrace::append(TraceRecord r) {
    std::lock_guard lock(mutex_);
    r.seq = records_.size() + 1;
    records_.push_back(std::move(r));
}

void PipelineTrace::append_slice(const std::vector<TraceRecord>& slice) {
    std::lock_guard lock(mutex_);
    for (TraceRecord r : slice) {
        r.seq = records_.size() + 1;
        records_.push_back(std::move(r));
    }
}

std::size_t PipelineTrace::size() const {
    std::lock_guard lock(mutex_);
    return records_.size();
}

std::vector<TraceRecord> PipelineTrace::records() const {
    std::lock_guard lock(mutex_);
    return records_;
}

std::vector<TraceRecord> PipelineTrace::slice_from(std::size_t start) const {
    std::lock_guard lock(mutex_);
    if (start >= records_.size()) return {};
    return {records_.begin() + static_cast<std::ptrdiff_t>(start), records_.end()};
}

std::vector<TraceRecord> PipelineTrace::canonical() const {
    auto sorted = records();
    auto topic_key = [](const TraceRecord& r) {
        return r.topic_index ? *r.topic_index : std::numeric_limits<int>::max();
    };
    std::stable_sort(sorted.begin(), sorted.end(), [&](const TraceRecord& a, const TraceRecord& b) {
        if (a.stage != b.stage) return static_cast<int>(a.stage) < static_cast<int>(b.stage);
        if (topic_key(a) != topic_key(b)) return topic_key(a) < topic_key(b);
        if (a.round != b.round) return a.round < b.round;
        if (a.role != b.role) return a.role < b.role;
        return a.attempts < b.attempts;
    });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        sorted[i].seq = i + 1;
    }
    return sorted;
}

std::string PipelineTrace::canonical_jsonl() const {
    std::string out;
    for (const auto& r : canonical()) {
        ijson j;
        to_json(j, r);
        out += j.dump();
        out += '\n';
    }
    return out;
}

} // namespace interpcast
