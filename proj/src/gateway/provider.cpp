#include "interpcast/gateway/provider.hpp"

#include "interpcast/errors.hpp"

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <fstream>
#include <sstream>

namespace interpcast::gateway {

ScriptedProvider::ScriptedProvider(std::vector<ScriptEntry> entries)
    : entries_(std::move(entries)) {}

std::vector<ScriptEntry> ScriptedProvider::read_script(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw IoError("cannot open script: " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    ijson j = ijson::parse(buf.str(), nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("entries") || !j["entries"].is_array()) {
        throw IoError("script is not a JSON object with an entries array: " + file.string());
    }
    std::vector<ScriptEntry> entries;
    for (const auto& e : j["entries"]) {
        ScriptEntry entry;
        if (e.contains("role") && !e["role"].is_null()) {
            entry.role = e["role"].get<std::string>();
        }
        entry.text = e.at("text").get<std::string>();
        entries.push_back(std::move(entry));
    }
    return entries;
}

std::filesystem::path ScriptedProvider::resolve(const std::filesystem::path& path_or_dir,
                                                const std::string& chapter_id) {
    if (std::filesystem::is_directory(path_or_dir)) {
        return path_or_dir / (chapter_id + ".json");
    }
    return path_or_dir;
}

WireResult ScriptedProvider::send(const ijson& body, const std::string& role_tag) {
    std::lock_guard lock(mutex_);
    if (cursor_ >= entries_.size()) {
        throw ScriptExhausted("script exhausted after " + std::to_string(entries_.size()) +
                              " entries; next call was " + role_tag);
    }
    const ScriptEntry& entry = entries_[cursor_];
    if (entry.role && *entry.role != role_tag) {
        throw RoleMismatch("script entry " + std::to_string(cursor_ + 1) + " expects role " +
                           *entry.role + " but the call was " + role_tag);
    }
    ++cursor_;
    wire_bodies_.push_back(body);
    return {entry.text, false};
}

void ScriptedProvider::fast_forward(std::size_t n) {
    std::lock_guard lock(mutex_);
    if (cursor_ + n > entries_.size()) {
        throw ScriptExhausted("cannot fast-forward " + std::to_string(n) + " calls; only " +
                              std::to_string(entries_.size() - cursor_) + " entries remain");
    }
    cursor_ += n;
}

std::size_t ScriptedProvider::consumed() const {
    std::lock_guard lock(mutex_);
    return cursor_;
}

std::size_t ScriptedProvider::remaining() const {
    std::lock_guard lock(mutex_);
    return entries_.size() - cursor_;
}

namespace {

// "https://host:port/some/base" -> ("https://host:port", "/some/base")
std::pair<std::string, std::string> split_base(const std::string& api_base) {
    auto scheme_end = api_base.find("://");
    if (scheme_end == std::string::npos) {
        throw ConfigError("api base must start with http:// or https://: " + api_base);
    }
    auto path_start = api_base.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {api_base, ""};
    std::string host = api_base.substr(0, path_start);
    std::string prefix = api_base.substr(path_start);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    return {host, prefix};
}

} // namespace

HttpProvider::HttpProvider(std::string api_base, std::string api_key)
    : api_key_(std::move(api_key)) {
    auto [host, prefix] = split_base(api_base);
    host_ = std::move(host);
    path_prefix_ = std::move(prefix);
}

WireResult HttpProvider::send(const ijson& body, const std::string& role_tag) {
    httplib::Client client(host_);
    client.set_connection_timeout(30, 0);
    client.set_read_timeout(300, 0);
    httplib::Headers headers;
    if (!api_key_.empty()) {
        headers.emplace("Authorization", "Bearer " + api_key_);
    }

    auto res = client.Post(path_prefix_ + "/chat/completions", headers, body.dump(),
                           "application/json");
    if (!res) {
        throw TransportError(role_tag + ": connection to " + host_ + " failed: " +
                             httplib::to_string(res.error()));
    }
    if (res->status == 429 || res->status >= 500) {
        throw TransportError(role_tag + ": provider returned status " +
                             std::to_string(res->status));
    }
    if (res->status != 200) {
        throw TransportError(role_tag + ": provider returned status " +
                                 std::to_string(res->status) + ": " + res->body,
                             false);
    }

    ijson j = ijson::parse(res->body, nullptr, false);
    if (j.is_discarded()) {
        throw TransportError(role_tag + ": provider response is not JSON", false);
    }
    try {
        const auto& choice = j.at("choices").at(0);
        WireResult out;
        out.text = choice.at("message").at("content").get<std::string>();
        if (choice.contains("finish_reason") && choice["finish_reason"].is_string()) {
            out.truncated = choice["finish_reason"].get<std::string>() == "length";
        }
        return out;
    } catch (const ijson::exception& e) {
        throw TransportError(role_tag + ": unexpected provider response shape: " + e.what(),
                             false);
    }
}

} // namespace interpcast::gateway
