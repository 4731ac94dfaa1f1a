#include "interpcast/pipeline/store.hpp"

#include "interpcast/errors.hpp"
#include "interpcast/sha256.hpp"

#include <fstream>
#include <sstream>

namespace interpcast::pipeline {

namespace {

void write_file_atomic(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw IoError("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::optional<std::string> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string trim_line(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ')) s.pop_back();
    return s;
}

} // namespace

RunStore::RunStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

void RunStore::write_json(const std::string& rel, const ijson& j) {
    const std::string payload = j.dump(2) + "\n";
    write_file_atomic(dir_ / rel, payload);
    write_file_atomic(dir_ / (rel + ".sha256"), sha256_hex(payload) + "\n");
}

std::optional<ijson> RunStore::read_json(const std::string& rel) const {
    auto payload = read_file(dir_ / rel);
    if (!payload) return std::nullopt;
    auto sidecar = read_file(dir_ / (rel + ".sha256"));
    if (!sidecar) return std::nullopt;
    if (trim_line(*sidecar) != sha256_hex(*payload)) {
        throw CorruptCheckpoint(rel + " does not match its sha256 sidecar");
    }
    ijson j = ijson::parse(*payload, nullptr, false);
    if (j.is_discarded()) {
        throw CorruptCheckpoint(rel + " is not parseable JSON despite a matching digest");
    }
    return j;
}

void RunStore::write_text(const std::string& rel, const std::string& text) {
    write_file_atomic(dir_ / rel, text);
}

std::optional<std::string> RunStore::read_text(const std::string& rel) const {
    return read_file(dir_ / rel);
}

std::string RunStore::unit_path(const std::string& unit) {
    if (unit == "tci") return "tci/result.json";
    if (unit == "rr") return "rr/manuscript.json";
    if (unit.rfind("pi/", 0) == 0) return "pi/topic_" + unit.substr(3) + ".json";
    if (unit.rfind("or/", 0) == 0) return "or/topic_" + unit.substr(3) + ".json";
    throw Error("unknown checkpoint unit: " + unit);
}

} // namespace interpcast::pipeline
