#pragma once

#include "interpcast/audio/audio.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace interpcast::audio {

std::string wav_bytes(const AudioSegment& segment);
AudioSegment parse_wav(std::string_view bytes);

void write_wav(const AudioSegment& segment, const std::filesystem::path& path);
AudioSegment read_wav(const std::filesystem::path& path);

} // namespace interpcast::audio
