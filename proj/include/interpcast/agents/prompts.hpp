#pragma once

#include "interpcast/domain/types.hpp"

#include <filesystem>
#include <map>
#include <string>

namespace interpcast::agents {

// Loads the per-role template files for one language and renders their
// sections with {placeholder} substitution. Templates are plain text with
// [section] headers; see prompts/README for the layout.
class PromptLibrary {
public:
    static PromptLibrary load(const std::filesystem::path& prompt_dir, domain::Language lang);

    bool has_section(const std::string& role_file, const std::string& section) const;
    const std::string& section(const std::string& role_file, const std::string& section) const;
    std::string render(const std::string& role_file, const std::string& section,
                       const std::map<std::string, std::string>& values) const;

    domain::Language language() const { return language_; }

private:
    domain::Language language_ = domain::Language::zh;
    std::map<std::string, std::map<std::string, std::string>> sections_;
};

// Substitutes {name} placeholders in a template chunk. Braces that do not
// wrap a lowercase identifier are left untouched, so JSON examples inside
// templates survive rendering.
std::string render_template(const std::string& text,
                            const std::map<std::string, std::string>& values);

} // namespace interpcast::agents
