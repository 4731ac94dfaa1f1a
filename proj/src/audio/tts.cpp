#include "interpcast/audio/tts.hpp"

#include "interpcast/audio/wav.hpp"
#include "interpcast/errors.hpp"
#include "interpcast/json.hpp"
#include "interpcast/text.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <cmath>
#include <numbers>

namespace interpcast::audio {

ToneTts::ToneTts(int sample_rate_hz, int ms_per_char)
    : sample_rate_hz_(sample_rate_hz), ms_per_char_(ms_per_char) {
    if (sample_rate_hz <= 0) throw PreconditionError("sample rate must be positive");
    if (ms_per_char <= 0) throw PreconditionError("ms_per_char must be positive");
}

AudioSegment ToneTts::synthesize(const std::string& chunk) {
    const auto chars = static_cast<long long>(text::codepoint_count(chunk));
    const auto frames = static_cast<std::size_t>(chars * ms_per_char_ * sample_rate_hz_ / 1000);

    AudioSegment out;
    out.sample_rate_hz = sample_rate_hz_;
    out.channels = 1;
    out.samples.resize(frames);
    constexpr double freq = 440.0;
    constexpr double amplitude = 8000.0;
    for (std::size_t i = 0; i < frames; ++i) {
        double phase = 2.0 * std::numbers::pi * freq * static_cast<double>(i) / sample_rate_hz_;
        out.samples[i] = static_cast<std::int16_t>(std::llround(amplitude * std::sin(phase)));
    }
    return out;
}

namespace {

std::pair<std::string, std::string> split_base(const std::string& base) {
    auto scheme_end = base.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("TTS base must start with http:// or https://: " + base);
    }
    auto path_start = base.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {base, ""};
    std::string host = base.substr(0, path_start);
    std::string prefix = base.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    return {host, prefix};
}

} // namespace

HttpTts::HttpTts(std::string base, int sample_rate_hz) : sample_rate_hz_(sample_rate_hz) {
    auto [host, prefix] = split_base(base);
    host_ = std::move(host);
    path_prefix_ = std::move(prefix);
}

AudioSegment HttpTts::synthesize(const std::string& chunk) {
    httplib::Client client(host_);
    client.set_connection_timeout(30, 0);
    client.set_read_timeout(600, 0);

    ijson body = ijson::object();
    body["text"] = chunk;
    body["sample_rate"] = sample_rate_hz_;

    auto res = client.Post(path_prefix_ + "/synthesize", body.dump(), "application/json");
    if (!res) {
        throw TtsTransportError("connection to " + host_ + " failed: " +
                                httplib::to_string(res.error()));
    }
    if (res->status != 200) {
        throw TtsTransportError("TTS backend returned status " + std::to_string(res->status));
    }
    return parse_wav(res->body);
}

AudioSegment make_chime(int sample_rate_hz, int duration_ms) {
    if (sample_rate_hz <= 0) throw PreconditionError("sample rate must be positive");
    if (duration_ms < 0) throw PreconditionError("duration must be >= 0");

    const auto frames = static_cast<std::size_t>(
        static_cast<long long>(sample_rate_hz) * duration_ms / 1000);
    AudioSegment out;
    out.sample_rate_hz = sample_rate_hz;
    out.channels = 1;
    out.samples.resize(frames);
    constexpr double amplitude = 6000.0;
    for (std::size_t i = 0; i < frames; ++i) {
        // C5 for the first half, E5 for the second, with a linear fade-out
        double freq = i * 2 < frames ? 523.25 : 659.25;
        double phase = 2.0 * std::numbers::pi * freq * static_cast<double>(i) / sample_rate_hz;
        double fade = 1.0 - static_cast<double>(i) / (frames ? frames : 1);
        out.samples[i] = static_cast<std::int16_t>(std::llround(amplitude * fade * std::sin(phase)));
    }
    return out;
}

} // namespace interpcast::audio
