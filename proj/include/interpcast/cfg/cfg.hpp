#pragma once

#include "interpcast/domain/config.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>

namespace interpcast::cfg {

using TomlValue = std::variant<std::string, std::int64_t, double, bool>;

// section name -> key -> value; keys before any [section] land in "".
using TomlTable = std::map<std::string, std::map<std::string, TomlValue>>;

// Flat TOML subset: [sections], bare keys, quoted strings, integers,
// floats, booleans, # comments. Enough to mirror PipelineConfig.
TomlTable parse_toml(std::string_view text);

// Applies parsed keys onto cfg; unknown sections or keys are errors.
void apply_toml(domain::PipelineConfig& cfg, const TomlTable& table);

// Defaults overlaid with the file's values.
domain::PipelineConfig load_config_file(const std::filesystem::path& path);

} // namespace interpcast::cfg
