#pragma once

#include "interpcast/domain/config.hpp"
#include "interpcast/domain/types.hpp"
#include "interpcast/trace.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace interpcast::audio {

struct AudioSegment {
    std::vector<std::int16_t> samples; // interleaved
    int sample_rate_hz = 0;
    int channels = 1;

    std::size_t frame_count() const {
        return channels > 0 ? samples.size() / static_cast<std::size_t>(channels) : 0;
    }

    bool operator==(const AudioSegment&) const = default;
};

struct SynthesisPlan {
    std::vector<std::string> chunks;
};

// Cuts the manuscript into TTS-sized chunks at sentence boundaries; chunks
// partition the text exactly, so rejoining them reproduces it byte for
// byte. A single sentence longer than the cap is split at the cap.
SynthesisPlan plan_chunks(const domain::Manuscript& manuscript,
                          const domain::PipelineConfig& cfg);

// intro + seg_1 + gap + seg_2 + ... + seg_k + outro.
AudioSegment assemble(const std::vector<AudioSegment>& segments, const AudioSegment& intro,
                      const AudioSegment& outro, int gap_ms);

class TtsBackend;

// One chunk through the backend, with the format contract enforced.
AudioSegment synthesize_chunk(TtsBackend& backend, const std::string& chunk,
                              const domain::PipelineConfig& cfg);

struct AudioRender {
    SynthesisPlan plan;
    AudioSegment audio;
};

// Full audio stage: plan, synthesize every chunk (recording one trace
// record per chunk when a trace is given), then assemble with the
// configured or generated transition effects.
AudioRender render_chapter_audio(const domain::Manuscript& manuscript,
                                 const domain::PipelineConfig& cfg, TtsBackend& backend,
                                 PipelineTrace* trace = nullptr);

} // namespace interpcast::audio
