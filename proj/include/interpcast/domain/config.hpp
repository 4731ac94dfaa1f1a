#pragma once

#include "interpcast/domain/types.hpp"

#include <string>

namespace interpcast::domain {

// Audio-stage settings. Transition effects default to generated chimes when
// no WAV paths are configured.
struct AudioConfig {
    int gap_ms = 300;               // pause inserted between synthesized chunks
    int transition_ms = 500;        // length of the generated default chime
    std::string intro_wav;          // optional user-supplied transition effect
    std::string outro_wav;
    int tone_ms_per_char = 10;      // deterministic tone backend: duration per char
    std::string tts_backend = "tone"; // "tone" | "http"

    bool operator==(const AudioConfig&) const = default;
};

struct PipelineConfig {
    int i_max = 3;                  // revision budget of every review-revise loop
    double temperature = 1.3;
    int max_tokens = 8192;          // completion cap sent on the wire
    std::string model = "deepseek-chat";
    int parse_retries = 2;          // corrective re-asks after a bad response
    int topic_cap = 3;              // maximum topic-case pairs per chapter
    Language prompt_language = Language::zh;
    int max_chapter_chars = 30000;  // chapters above this are rejected, not windowed
    int tts_chunk_chars = 500;
    int sample_rate_hz = 44100;
    std::string prompt_dir = "prompts";
    AudioConfig audio;

    bool operator==(const PipelineConfig&) const = default;
};

} // namespace interpcast::domain
