#include "interpcast/audio/audio.hpp"

#include "interpcast/audio/tts.hpp"
#include "interpcast/audio/wav.hpp"
#include "interpcast/errors.hpp"
#include "interpcast/sha256.hpp"
#include "interpcast/text.hpp"

#include <utility>

namespace interpcast::audio {

namespace {

// Sentence units partition the text: each unit ends where a sentence ends
// and the last unit runs to the end of the text, so leading separators and
// unterminated tails stay attached.
std::vector<std::string> sentence_units(const std::string& text) {
    auto spans = text::split_sentences(text);
    std::vector<std::string> units;
    std::size_t begin = 0;
    for (std::size_t k = 0; k < spans.size(); ++k) {
        const std::size_t end = (k + 1 == spans.size()) ? text.size() : spans[k].end;
        units.push_back(text.substr(begin, end - begin));
        begin = end;
    }
    return units;
}

void force_split(const std::string& unit, std::size_t cap, std::vector<std::string>& out) {
    std::size_t offset = 0;
    while (offset < unit.size()) {
        std::string_view rest(unit.data() + offset, unit.size() - offset);
        std::size_t take = text::codepoint_offset(rest, cap);
        out.push_back(std::string(rest.substr(0, take)));
        offset += take;
    }
}

} // namespace

SynthesisPlan plan_chunks(const domain::Manuscript& manuscript,
                          const domain::PipelineConfig& cfg) {
    if (manuscript.status == domain::ArtifactStatus::in_review) {
        throw PreconditionError("manuscript is still in review");
    }
    if (text::collapse_spaces(manuscript.text).empty()) {
        throw EmptyManuscript("manuscript has no sentence content");
    }
    const auto cap = static_cast<std::size_t>(cfg.tts_chunk_chars);

    SynthesisPlan plan;
    std::string current;
    std::size_t current_cp = 0;
    auto close = [&] {
        if (!current.empty()) {
            plan.chunks.push_back(std::move(current));
            current.clear();
            current_cp = 0;
        }
    };

    for (auto& unit : sentence_units(manuscript.text)) {
        const std::size_t cp = text::codepoint_count(unit);
        if (cp > cap) {
            close();
            force_split(unit, cap, plan.chunks);
            continue;
        }
        if (!current.empty() && current_cp + cp > cap) close();
        current += unit;
        current_cp += cp;
    }
    close();
    return plan;
}

AudioSegment assemble(const std::vector<AudioSegment>& segments, const AudioSegment& intro,
                      const AudioSegment& outro, int gap_ms) {
    if (segments.empty()) throw PreconditionError("assemble needs at least one segment");
    if (gap_ms < 0) throw PreconditionError("gap_ms must be >= 0");

    const int rate = intro.sample_rate_hz;
    const int channels = intro.channels;
    auto check = [&](const AudioSegment& s, const std::string& which) {
        if (s.sample_rate_hz != rate) {
            throw RateMismatch(which + " is " + std::to_string(s.sample_rate_hz) +
                               " Hz, expected " + std::to_string(rate));
        }
        if (s.channels != channels) {
            throw ChannelMismatch(which + " has " + std::to_string(s.channels) +
                                  " channels, expected " + std::to_string(channels));
        }
    };
    check(outro, "outro");
    for (std::size_t i = 0; i < segments.size(); ++i) {
        check(segments[i], "segment " + std::to_string(i + 1));
    }

    const std::size_t gap_frames =
        static_cast<std::size_t>(static_cast<long long>(rate) * gap_ms / 1000);
    const std::size_t gap_samples = gap_frames * static_cast<std::size_t>(channels);

    AudioSegment out;
    out.sample_rate_hz = rate;
    out.channels = channels;
    std::size_t total = intro.samples.size() + outro.samples.size() +
                        gap_samples * (segments.size() - 1);
    for (const auto& s : segments) total += s.samples.size();
    out.samples.reserve(total);

    out.samples.insert(out.samples.end(), intro.samples.begin(), intro.samples.end());
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i > 0) out.samples.insert(out.samples.end(), gap_samples, 0);
        out.samples.insert(out.samples.end(), segments[i].samples.begin(),
                           segments[i].samples.end());
    }
    out.samples.insert(out.samples.end(), outro.samples.begin(), outro.samples.end());
    return out;
}

AudioSegment synthesize_chunk(TtsBackend& backend, const std::string& chunk,
                              const domain::PipelineConfig& cfg) {
    if (chunk.empty()) throw PreconditionError("chunk must be non-empty");
    AudioSegment segment = backend.synthesize(chunk);
    if (segment.sample_rate_hz != cfg.sample_rate_hz) {
        throw TtsFormatError("backend returned " + std::to_string(segment.sample_rate_hz) +
                             " Hz, config demands " + std::to_string(cfg.sample_rate_hz));
    }
    if (segment.channels != 1) {
        throw TtsFormatError("backend returned " + std::to_string(segment.channels) +
                             " channels, the pipeline is mono");
    }
    return segment;
}

AudioRender render_chapter_audio(const domain::Manuscript& manuscript,
                                 const domain::PipelineConfig& cfg, TtsBackend& backend,
                                 PipelineTrace* trace) {
    AudioRender render;
    render.plan = plan_chunks(manuscript, cfg);

    std::vector<AudioSegment> segments;
    for (std::size_t i = 0; i < render.plan.chunks.size(); ++i) {
        const std::string& chunk = render.plan.chunks[i];
        AudioSegment seg = synthesize_chunk(backend, chunk, cfg);
        if (trace) {
            TraceRecord r;
            r.stage = Stage::Audio;
            r.role = "TTS";
            r.round = static_cast<int>(i);
            r.request_sha256 = sha256_hex(chunk);
            r.response_sha256 = sha256_hex(
                std::string_view(reinterpret_cast<const char*>(seg.samples.data()),
                                 seg.samples.size() * sizeof(std::int16_t)));
            trace->append(std::move(r));
        }
        segments.push_back(std::move(seg));
    }

    AudioSegment intro = cfg.audio.intro_wav.empty()
                             ? make_chime(cfg.sample_rate_hz, cfg.audio.transition_ms)
                             : read_wav(cfg.audio.intro_wav);
    AudioSegment outro = cfg.audio.outro_wav.empty()
                             ? make_chime(cfg.sample_rate_hz, cfg.audio.transition_ms)
                             : read_wav(cfg.audio.outro_wav);

    render.audio = assemble(segments, intro, outro, cfg.audio.gap_ms);
    return render;
}

} // namespace interpcast::audio
