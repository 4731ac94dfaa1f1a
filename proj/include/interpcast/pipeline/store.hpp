#pragma once

#include "interpcast/json.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace interpcast::pipeline {

// Files under one chapter's run directory. Every JSON file carries a
// .sha256 sidecar; a payload that contradicts its sidecar is corrupt, a
// missing sidecar counts as a missing (half-written) file.
class RunStore {
public:
    explicit RunStore(std::filesystem::path dir);

    const std::filesystem::path& dir() const { return dir_; }

    void write_json(const std::string& rel, const ijson& j);
    std::optional<ijson> read_json(const std::string& rel) const;
    void write_text(const std::string& rel, const std::string& text);
    std::optional<std::string> read_text(const std::string& rel) const;

    // "tci" | "pi/<k>" | "or/<k>" | "rr" -> relative checkpoint path
    static std::string unit_path(const std::string& unit);

private:
    std::filesystem::path dir_;
};

} // namespace interpcast::pipeline
