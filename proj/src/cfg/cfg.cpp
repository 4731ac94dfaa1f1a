#include "interpcast/cfg/cfg.hpp"

#include "interpcast/domain/serde.hpp"
#include "interpcast/errors.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace interpcast::cfg {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Cuts a trailing comment, respecting quoted strings.
std::string_view strip_comment(std::string_view line) {
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_string) {
            if (escaped) {
                escaped = false;
            } else if (c == '\\') {
                escaped = true;
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '"') in_string = true;
        if (c == '#') return line.substr(0, i);
    }
    return line;
}

bool valid_key(std::string_view key) {
    if (key.empty()) return false;
    for (char c : key) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    }
    return true;
}

TomlValue parse_value(std::string_view raw, int line_no) {
    if (raw.empty()) throw ConfigError("line " + std::to_string(line_no) + ": missing value");

    if (raw.front() == '"') {
        if (raw.size() < 2 || raw.back() != '"') {
            throw ConfigError("line " + std::to_string(line_no) + ": unterminated string");
        }
        std::string out;
        for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
            char c = raw[i];
            if (c != '\\') {
                out += c;
                continue;
            }
            if (i + 2 >= raw.size() + 1) {
                throw ConfigError("line " + std::to_string(line_no) + ": dangling escape");
            }
            char e = raw[++i];
            switch (e) {
            case '"': out += '"'; break;
            case '\\': out += '\\'; break;
            case 'n': out += '\n'; break;
            case 't': out += '\t'; break;
            default:
                throw ConfigError("line " + std::to_string(line_no) +
                                  ": unsupported escape \\" + std::string(1, e));
            }
        }
        return out;
    }
    if (raw == "true") return true;
    if (raw == "false") return false;

    const bool looks_float = raw.find_first_of(".eE") != std::string_view::npos;
    if (!looks_float) {
        std::int64_t i = 0;
        auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), i);
        if (ec == std::errc() && p == raw.data() + raw.size()) return i;
    }
    double d = 0;
    auto [p, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), d);
    if (ec == std::errc() && p == raw.data() + raw.size()) return d;

    throw ConfigError("line " + std::to_string(line_no) + ": cannot parse value: " +
                      std::string(raw));
}

} // namespace

TomlTable parse_toml(std::string_view text) {
    TomlTable table;
    std::string section;
    table[section];

    std::istringstream in{std::string(text)};
    std::string raw_line;
    int line_no = 0;
    while (std::getline(in, raw_line)) {
        ++line_no;
        std::string_view line = trim(strip_comment(raw_line));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(line_no) + ": malformed section");
            }
            std::string_view name = trim(line.substr(1, line.size() - 2));
            if (!valid_key(name)) {
                throw ConfigError("line " + std::to_string(line_no) + ": malformed section name");
            }
            section = std::string(name);
            table[section];
            continue;
        }

        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string_view key = trim(line.substr(0, eq));
        if (!valid_key(key)) {
            throw ConfigError("line " + std::to_string(line_no) + ": malformed key");
        }
        auto& dest = table[section];
        if (dest.count(std::string(key))) {
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key " +
                              std::string(key));
        }
        dest[std::string(key)] = parse_value(trim(line.substr(eq + 1)), line_no);
    }
    return table;
}

namespace {

std::int64_t as_int(const TomlValue& v, const std::string& key) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
    throw ConfigError(key + " must be an integer");
}

double as_double(const TomlValue& v, const std::string& key) {
    if (const auto* d = std::get_if<double>(&v)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    throw ConfigError(key + " must be a number");
}

std::string as_string(const TomlValue& v, const std::string& key) {
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    throw ConfigError(key + " must be a string");
}

void apply_pipeline_key(domain::PipelineConfig& cfg, const std::string& key,
                        const TomlValue& value) {
    if (key == "i_max") {
        cfg.i_max = static_cast<int>(as_int(value, key));
    } else if (key == "temperature") {
        cfg.temperature = as_double(value, key);
    } else if (key == "max_tokens") {
        cfg.max_tokens = static_cast<int>(as_int(value, key));
    } else if (key == "model") {
        cfg.model = as_string(value, key);
    } else if (key == "parse_retries") {
        cfg.parse_retries = static_cast<int>(as_int(value, key));
    } else if (key == "topic_cap") {
        cfg.topic_cap = static_cast<int>(as_int(value, key));
    } else if (key == "prompt_language") {
        cfg.prompt_language = domain::language_from_string(as_string(value, key));
    } else if (key == "max_chapter_chars") {
        cfg.max_chapter_chars = static_cast<int>(as_int(value, key));
    } else if (key == "tts_chunk_chars") {
        cfg.tts_chunk_chars = static_cast<int>(as_int(value, key));
    } else if (key == "sample_rate_hz") {
        cfg.sample_rate_hz = static_cast<int>(as_int(value, key));
    } else if (key == "prompt_dir") {
        cfg.prompt_dir = as_string(value, key);
    } else {
        throw ConfigError("unknown config key: " + key);
    }
}

void apply_audio_key(domain::PipelineConfig& cfg, const std::string& key,
                     const TomlValue& value) {
    if (key == "gap_ms") {
        cfg.audio.gap_ms = static_cast<int>(as_int(value, key));
    } else if (key == "transition_ms") {
        cfg.audio.transition_ms = static_cast<int>(as_int(value, key));
    } else if (key == "intro_wav") {
        cfg.audio.intro_wav = as_string(value, key);
    } else if (key == "outro_wav") {
        cfg.audio.outro_wav = as_string(value, key);
    } else if (key == "tone_ms_per_char") {
        cfg.audio.tone_ms_per_char = static_cast<int>(as_int(value, key));
    } else if (key == "tts_backend") {
        cfg.audio.tts_backend = as_string(value, key);
    } else {
        throw ConfigError("unknown [audio] config key: " + key);
    }
}

} // namespace

void apply_toml(domain::PipelineConfig& cfg, const TomlTable& table) {
    for (const auto& [section, keys] : table) {
        if (section.empty() || section == "pipeline") {
            for (const auto& [key, value] : keys) apply_pipeline_key(cfg, key, value);
        } else if (section == "audio") {
            for (const auto& [key, value] : keys) apply_audio_key(cfg, key, value);
        } else {
            throw ConfigError("unknown config section: [" + section + "]");
        }
    }
}

domain::PipelineConfig load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();

    domain::PipelineConfig cfg;
    apply_toml(cfg, parse_toml(buf.str()));
    return cfg;
}

} // namespace interpcast::cfg
