#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace interpcast::text {

// Number of UTF-8 codepoints in the string. Invalid lead bytes count as
// one codepoint each so the function is total on arbitrary input.
std::size_t codepoint_count(std::string_view s);

// Byte offset of the n-th codepoint (n in [0, count]); offset == s.size()
// when n >= count.
std::size_t codepoint_offset(std::string_view s, std::size_t n);

// Line-level normalization applied to chapter bodies: CRLF/CR -> LF,
// trailing spaces stripped, runs of blank lines collapsed to one, leading
// and trailing blank lines removed. Idempotent.
std::string normalize_whitespace(std::string_view s);

// Collapses every whitespace run to a single space and trims the ends.
// Used for "equal modulo whitespace" comparisons.
std::string collapse_spaces(std::string_view s);

// Strips common markdown structure (headings, emphasis, links, code fences,
// list markers, blockquotes) keeping the text content verbatim.
std::string strip_markdown(std::string_view s);

// Half-open byte range of one sentence, terminal punctuation included.
struct SentenceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

// Splits on sentence-final punctuation (Chinese and ASCII). An ASCII
// terminator only ends a sentence when not followed by an alphanumeric
// character, so decimals and file names stay intact. Trailing text without
// a terminator forms the last sentence.
std::vector<SentenceSpan> split_sentences(std::string_view s);

} // namespace interpcast::text
