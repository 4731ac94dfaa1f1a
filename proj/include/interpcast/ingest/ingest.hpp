#pragma once

#include "interpcast/domain/config.hpp"
#include "interpcast/domain/types.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace interpcast::ingest {

struct ManifestChapter {
    std::string chapter_id;
    std::string title;
    std::string source_path;

    bool operator==(const ManifestChapter&) const = default;
};

struct BookManifest {
    std::string book_id;
    std::string title;
    domain::Language language = domain::Language::zh;
    std::vector<ManifestChapter> chapters;

    bool operator==(const BookManifest&) const = default;
};

BookManifest read_manifest(const std::filesystem::path& manifest_path);

// Loads every chapter body named by the manifest: markdown sources are
// flattened to plain text, whitespace normalized, and length checked
// against cfg.max_chapter_chars (codepoints).
std::vector<domain::Chapter> load_book(const std::filesystem::path& manifest_path,
                                       const domain::PipelineConfig& cfg);

// Markdown flattening + whitespace normalization for one source text.
std::string clean_source(const std::string& raw, bool markdown);

} // namespace interpcast::ingest
