#include "interpcast/agents/prompts.hpp"

#include "interpcast/domain/serde.hpp"
#include "interpcast/errors.hpp"

#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

namespace interpcast::agents {

namespace {

constexpr std::array<const char*, 11> kRoleFiles = {"ta", "pr1", "ca1", "ca2", "ca3", "ed1",
                                                    "pr2", "nr", "pr3", "ed2", "pr4"};

constexpr std::array<const char*, 4> kSections = {"system", "user", "user.revise",
                                                  "user.reinvoke"};

bool known_section(const std::string& name) {
    for (auto s : kSections) {
        if (name == s) return true;
    }
    return false;
}

std::string trim_edges(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && (s[b] == '\n' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == '\n' || s[e - 1] == '\r' || s[e - 1] == ' ')) --e;
    return s.substr(b, e - b);
}

std::map<std::string, std::string> parse_sections(const std::string& text,
                                                  const std::string& origin) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    std::string current;
    std::string body;
    auto flush = [&] {
        if (!current.empty()) out[current] = trim_edges(body);
        body.clear();
    };
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.size() >= 2 && line.front() == '[' && line.back() == ']') {
            std::string name = line.substr(1, line.size() - 2);
            if (!known_section(name)) {
                throw ConfigError(origin + ": unknown template section [" + name + "]");
            }
            flush();
            current = name;
            continue;
        }
        if (current.empty()) {
            if (!trim_edges(line).empty()) {
                throw ConfigError(origin + ": text before the first [section] header");
            }
            continue;
        }
        body += line;
        body += '\n';
    }
    flush();
    return out;
}

} // namespace

PromptLibrary PromptLibrary::load(const std::filesystem::path& prompt_dir, domain::Language lang) {
    PromptLibrary lib;
    lib.language_ = lang;
    const std::filesystem::path base = prompt_dir / domain::to_string(lang);
    for (auto role : kRoleFiles) {
        const std::filesystem::path file = base / (std::string(role) + ".txt");
        std::ifstream in(file, std::ios::binary);
        if (!in) throw ConfigError("missing prompt template: " + file.string());
        std::stringstream buf;
        buf << in.rdbuf();
        auto sections = parse_sections(buf.str(), file.string());
        if (!sections.count("system") || !sections.count("user")) {
            throw ConfigError(file.string() + ": templates need [system] and [user] sections");
        }
        lib.sections_[role] = std::move(sections);
    }
    return lib;
}

bool PromptLibrary::has_section(const std::string& role_file, const std::string& section) const {
    auto it = sections_.find(role_file);
    return it != sections_.end() && it->second.count(section) > 0;
}

const std::string& PromptLibrary::section(const std::string& role_file,
                                          const std::string& section) const {
    auto it = sections_.find(role_file);
    if (it == sections_.end()) throw ConfigError("unknown prompt role: " + role_file);
    auto sit = it->second.find(section);
    if (sit == it->second.end()) {
        throw ConfigError("prompt " + role_file + " has no [" + section + "] section");
    }
    return sit->second;
}

std::string render_template(const std::string& text,
                            const std::map<std::string, std::string>& values) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c != '{') {
            out += c;
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        while (j < text.size() && (std::islower(static_cast<unsigned char>(text[j])) ||
                                   text[j] == '_')) {
            ++j;
        }
        if (j > i + 1 && j < text.size() && text[j] == '}') {
            std::string name = text.substr(i + 1, j - i - 1);
            auto it = values.find(name);
            if (it == values.end()) {
                throw ConfigError("prompt placeholder {" + name + "} has no value");
            }
            out += it->second;
            i = j + 1;
        } else {
            out += c;
            ++i;
        }
    }
    return out;
}

std::string PromptLibrary::render(const std::string& role_file, const std::string& section_name,
                                  const std::map<std::string, std::string>& values) const {
    return render_template(section(role_file, section_name), values);
}

} // namespace interpcast::agents
