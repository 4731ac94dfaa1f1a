#include "interpcast/audio/wav.hpp"

#include "interpcast/errors.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

namespace interpcast::audio {

namespace {

void put_u32(std::string& out, std::uint32_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
    out.push_back(static_cast<char>((v >> 16) & 0xff));
    out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

std::uint32_t get_u32(std::string_view s, std::size_t off) {
    return static_cast<std::uint32_t>(static_cast<unsigned char>(s[off])) |
           static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + 1])) << 8 |
           static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + 2])) << 16 |
           static_cast<std::uint32_t>(static_cast<unsigned char>(s[off + 3])) << 24;
}

std::uint16_t get_u16(std::string_view s, std::size_t off) {
    return static_cast<std::uint16_t>(static_cast<unsigned char>(s[off]) |
                                      static_cast<unsigned char>(s[off + 1]) << 8);
}

} // namespace

std::string wav_bytes(const AudioSegment& segment) {
    if (segment.sample_rate_hz <= 0) throw PreconditionError("sample rate must be positive");
    if (segment.channels <= 0) throw PreconditionError("channel count must be positive");
    if (segment.samples.size() % static_cast<std::size_t>(segment.channels) != 0) {
        throw PreconditionError("sample count must divide by channels");
    }

    const auto data_size = static_cast<std::uint32_t>(segment.samples.size() * 2);
    const auto rate = static_cast<std::uint32_t>(segment.sample_rate_hz);
    const auto channels = static_cast<std::uint16_t>(segment.channels);
    const std::uint16_t block_align = channels * 2;

    std::string out;
    out.reserve(44 + data_size);
    out += "RIFF";
    put_u32(out, 36 + data_size);
    out += "WAVE";
    out += "fmt ";
    put_u32(out, 16);
    put_u16(out, 1); // PCM
    put_u16(out, channels);
    put_u32(out, rate);
    put_u32(out, rate * block_align);
    put_u16(out, block_align);
    put_u16(out, 16);
    out += "data";
    put_u32(out, data_size);
    for (std::int16_t s : segment.samples) {
        const auto u = static_cast<std::uint16_t>(s);
        out.push_back(static_cast<char>(u & 0xff));
        out.push_back(static_cast<char>((u >> 8) & 0xff));
    }
    return out;
}

AudioSegment parse_wav(std::string_view bytes) {
    if (bytes.size() < 12 || bytes.substr(0, 4) != "RIFF" || bytes.substr(8, 4) != "WAVE") {
        throw TtsFormatError("not a RIFF/WAVE stream");
    }

    AudioSegment out;
    bool have_fmt = false;
    bool have_data = false;
    std::size_t off = 12;
    while (off + 8 <= bytes.size()) {
        const std::string_view tag = bytes.substr(off, 4);
        const std::uint32_t size = get_u32(bytes, off + 4);
        off += 8;
        if (off + size > bytes.size()) throw TtsFormatError("truncated WAV chunk");

        if (tag == "fmt ") {
            if (size < 16) throw TtsFormatError("fmt chunk too short");
            const std::uint16_t format = get_u16(bytes, off);
            if (format != 1) throw TtsFormatError("only PCM WAV is supported");
            out.channels = get_u16(bytes, off + 2);
            out.sample_rate_hz = static_cast<int>(get_u32(bytes, off + 4));
            const std::uint16_t bits = get_u16(bytes, off + 14);
            if (bits != 16) throw TtsFormatError("only 16-bit WAV is supported");
            have_fmt = true;
        } else if (tag == "data") {
            if (size % 2 != 0) throw TtsFormatError("odd data chunk size");
            out.samples.resize(size / 2);
            for (std::size_t i = 0; i < out.samples.size(); ++i) {
                out.samples[i] = static_cast<std::int16_t>(get_u16(bytes, off + i * 2));
            }
            have_data = true;
        }
        off += size + (size % 2); // chunks are word-aligned
    }

    if (!have_fmt || !have_data) throw TtsFormatError("missing fmt or data chunk");
    if (out.channels <= 0 || out.sample_rate_hz <= 0) {
        throw TtsFormatError("invalid fmt chunk values");
    }
    if (out.samples.size() % static_cast<std::size_t>(out.channels) != 0) {
        throw TtsFormatError("sample count does not divide by channels");
    }
    return out;
}

void write_wav(const AudioSegment& segment, const std::filesystem::path& path) {
    const std::string bytes = wav_bytes(segment);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to " + path.string());
}

AudioSegment read_wav(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_wav(bytes);
}

} // namespace interpcast::audio
