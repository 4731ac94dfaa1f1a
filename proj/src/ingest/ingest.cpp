#include "interpcast/ingest/ingest.hpp"

#include "interpcast/domain/serde.hpp"
#include "interpcast/errors.hpp"
#include "interpcast/json.hpp"
#include "interpcast/text.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace interpcast::ingest {

namespace {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SourceMissing("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string need_string(const ijson& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_string() || j.at(key).get<std::string>().empty()) {
        throw ManifestError(where + ": missing or empty \"" + key + "\"");
    }
    return j.at(key).get<std::string>();
}

bool is_markdown(const std::filesystem::path& path) {
    auto ext = path.extension().string();
    return ext == ".md" || ext == ".markdown";
}

} // namespace

BookManifest read_manifest(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path, std::ios::binary);
    if (!in) throw ManifestError("cannot read manifest: " + manifest_path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    ijson j = ijson::parse(buf.str(), nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw ManifestError("manifest is not a JSON object: " + manifest_path.string());
    }

    const std::string where = manifest_path.filename().string();
    BookManifest manifest;
    manifest.book_id = need_string(j, "book_id", where);
    manifest.title = need_string(j, "title", where);
    try {
        manifest.language = domain::language_from_string(need_string(j, "language", where));
    } catch (const ValidationError& e) {
        throw ManifestError(where + ": " + e.what());
    }

    if (!j.contains("chapters") || !j.at("chapters").is_array() || j.at("chapters").empty()) {
        throw ManifestError(where + ": \"chapters\" must be a non-empty array");
    }
    std::set<std::string> seen;
    for (const auto& cj : j.at("chapters")) {
        ManifestChapter chapter;
        chapter.chapter_id = need_string(cj, "chapter_id", where);
        chapter.title = need_string(cj, "title", where);
        chapter.source_path = need_string(cj, "source_path", where);
        if (!seen.insert(chapter.chapter_id).second) {
            throw ManifestError(where + ": duplicate chapter_id " + chapter.chapter_id);
        }
        manifest.chapters.push_back(std::move(chapter));
    }
    return manifest;
}

std::string clean_source(const std::string& raw, bool markdown) {
    return text::normalize_whitespace(markdown ? text::strip_markdown(raw) : raw);
}

std::vector<domain::Chapter> load_book(const std::filesystem::path& manifest_path,
                                       const domain::PipelineConfig& cfg) {
    const BookManifest manifest = read_manifest(manifest_path);
    const std::filesystem::path base = manifest_path.parent_path();

    std::vector<domain::Chapter> chapters;
    for (const auto& entry : manifest.chapters) {
        std::filesystem::path source(entry.source_path);
        if (source.is_relative()) source = base / source;
        if (!std::filesystem::exists(source)) {
            throw SourceMissing(entry.chapter_id + ": source not found: " + source.string());
        }

        domain::Chapter chapter;
        chapter.book_id = manifest.book_id;
        chapter.chapter_id = entry.chapter_id;
        chapter.title = entry.title;
        chapter.language = manifest.language;
        chapter.body = clean_source(read_file(source), is_markdown(source));
        if (chapter.body.empty()) {
            throw ManifestError(entry.chapter_id + ": source has no text content");
        }

        const std::size_t count = text::codepoint_count(chapter.body);
        if (count > static_cast<std::size_t>(cfg.max_chapter_chars)) {
            throw ChapterTooLong(entry.chapter_id + ": " + std::to_string(count) +
                                 " chars exceeds the " +
                                 std::to_string(cfg.max_chapter_chars) + " cap");
        }
        chapters.push_back(std::move(chapter));
    }
    return chapters;
}

} // namespace interpcast::ingest
