#pragma once

#include "interpcast/audio/audio.hpp"

#include <string>

namespace interpcast::audio {

class TtsBackend {
public:
    virtual ~TtsBackend() = default;
    virtual std::string id() const = 0;
    virtual AudioSegment synthesize(const std::string& chunk) = 0;
};

// Deterministic offline backend: a 440 Hz sine whose duration is
// ms_per_char milliseconds per codepoint of the chunk.
class ToneTts : public TtsBackend {
public:
    ToneTts(int sample_rate_hz, int ms_per_char);

    std::string id() const override { return "tone"; }
    AudioSegment synthesize(const std::string& chunk) override;

private:
    int sample_rate_hz_;
    int ms_per_char_;
};

// Fish-Speech-compatible HTTP backend: POST {base}/synthesize with
// {text, sample_rate}, response is WAV bytes.
class HttpTts : public TtsBackend {
public:
    HttpTts(std::string base, int sample_rate_hz);

    std::string id() const override { return "http"; }
    AudioSegment synthesize(const std::string& chunk) override;

private:
    std::string host_;
    std::string path_prefix_;
    int sample_rate_hz_;
};

// Two-tone transition effect used when config names no intro/outro file.
AudioSegment make_chime(int sample_rate_hz, int duration_ms);

} // namespace interpcast::audio
