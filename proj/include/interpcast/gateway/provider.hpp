#pragma once

#include "interpcast/json.hpp"

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace interpcast::gateway {

struct WireResult {
    std::string text;
    bool truncated = false;
};

class Provider {
public:
    virtual ~Provider() = default;
    virtual std::string id() const = 0;

    // body is the already-built chat.completions request. role_tag is not
    // part of the wire format; scripted providers use it for order checks.
    virtual WireResult send(const ijson& body, const std::string& role_tag) = 0;

    // Skip the first n calls of a replayed run. Only meaningful for
    // scripted providers; live providers ignore it.
    virtual void fast_forward(std::size_t n) { (void)n; }
};

struct ScriptEntry {
    std::optional<std::string> role;
    std::string text;
};

// Serves canned responses in strict order. Used by tests and by the
// `script:` provider of the CLI.
class ScriptedProvider : public Provider {
public:
    explicit ScriptedProvider(std::vector<ScriptEntry> entries);
    explicit ScriptedProvider(const std::filesystem::path& file)
        : ScriptedProvider(read_script(file)) {}

    static std::vector<ScriptEntry> read_script(const std::filesystem::path& file);

    // Accepts a script file or a directory; directories are resolved per
    // chapter via <dir>/<chapter_id>.json.
    static std::filesystem::path resolve(const std::filesystem::path& path_or_dir,
                                         const std::string& chapter_id);

    std::string id() const override { return "script"; }
    WireResult send(const ijson& body, const std::string& role_tag) override;
    void fast_forward(std::size_t n) override;

    std::size_t consumed() const;
    std::size_t remaining() const;
    const std::vector<ijson>& wire_bodies() const { return wire_bodies_; }

private:
    mutable std::mutex mutex_;
    std::vector<ScriptEntry> entries_;
    std::size_t cursor_ = 0;
    std::vector<ijson> wire_bodies_;
};

// OpenAI-compatible chat completions client.
class HttpProvider : public Provider {
public:
    HttpProvider(std::string api_base, std::string api_key);

    std::string id() const override { return "openai-compat"; }
    WireResult send(const ijson& body, const std::string& role_tag) override;

private:
    std::string host_; // scheme://host[:port]
    std::string path_prefix_;
    std::string api_key_;
};

} // namespace interpcast::gateway
