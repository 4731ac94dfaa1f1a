#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "interpcast/text.hpp"

#include <cstdint>
#include <string>
#include <vector>

using namespace interpcast::text;

namespace {

// Small deterministic generator for the property checks.
struct Lcg {
    std::uint64_t state;
    explicit Lcg(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state >> 33;
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

std::string random_ws_text(Lcg& rng, int len) {
    static const char* pieces[] = {"a", "b", "字", "句",  " ",  "  ", "\t",
                                   "\n", "\r\n", "\n\n", "\r", ".",  "。"};
    std::string out;
    for (int i = 0; i < len; ++i) {
        out += pieces[rng.below(13)];
    }
    return out;
}

} // namespace

TEST_CASE("codepoint_count handles ascii, cjk and invalid leads") {
    CHECK(codepoint_count("") == 0);
    CHECK(codepoint_count("abc") == 3);
    CHECK(codepoint_count("你好") == 2);
    CHECK(codepoint_count("a你b好c") == 5);
    CHECK(codepoint_count("\xF0\x9F\x99\x82") == 1); // 4-byte scalar
    CHECK(codepoint_count("\xFF\xFF") == 2);         // invalid leads count one byte each
}

TEST_CASE("codepoint_offset maps codepoint indices to byte offsets") {
    const std::string s = "a你b";
    CHECK(codepoint_offset(s, 0) == 0);
    CHECK(codepoint_offset(s, 1) == 1);
    CHECK(codepoint_offset(s, 2) == 4);
    CHECK(codepoint_offset(s, 3) == 5);
    CHECK(codepoint_offset(s, 99) == s.size());
}

TEST_CASE("codepoint_offset agrees with codepoint_count") {
    Lcg rng(7);
    for (int it = 0; it < 200; ++it) {
        std::string s = random_ws_text(rng, rng.below(40));
        auto n = codepoint_count(s);
        CHECK(codepoint_offset(s, n) == s.size());
        for (std::size_t k = 0; k < n; ++k) {
            auto off = codepoint_offset(s, k);
            CHECK(off < s.size());
            CHECK(codepoint_count(std::string_view(s).substr(0, off)) == k);
        }
    }
}

TEST_CASE("normalize_whitespace folds line endings and blank runs") {
    CHECK(normalize_whitespace("a\r\nb") == "a\nb");
    CHECK(normalize_whitespace("a\rb") == "a\nb");
    CHECK(normalize_whitespace("a  \nb") == "a\nb");
    CHECK(normalize_whitespace("a\n\n\n\nb") == "a\n\nb");
    CHECK(normalize_whitespace("\n\n a") == " a");
    CHECK(normalize_whitespace("a\n\n\n") == "a");
    CHECK(normalize_whitespace("") == "");
    CHECK(normalize_whitespace("  \n \t\n") == "");
}

TEST_CASE("normalize_whitespace is idempotent") {
    Lcg rng(11);
    for (int it = 0; it < 500; ++it) {
        std::string s = random_ws_text(rng, rng.below(60));
        auto once = normalize_whitespace(s);
        CHECK(normalize_whitespace(once) == once);
    }
}

TEST_CASE("collapse_spaces squeezes every whitespace run") {
    CHECK(collapse_spaces("  a\t\nb  c ") == "a b c");
    CHECK(collapse_spaces("") == "");
    CHECK(collapse_spaces(" \n\t ") == "");
    CHECK(collapse_spaces("一  二") == "一 二");
}

TEST_CASE("strip_markdown removes structure and keeps content") {
    CHECK(strip_markdown("# Title") == "Title");
    CHECK(strip_markdown("### Deep header") == "Deep header");
    CHECK(strip_markdown("**bold** and *em* and ***both***") == "bold and em and both");
    CHECK(strip_markdown("a [link](http://x) b") == "a link b");
    CHECK(strip_markdown("![alt text](img.png)") == "alt text");
    CHECK(strip_markdown("`code_span`") == "code_span");
    CHECK(strip_markdown("- item one\n- item two") == "item one\nitem two");
    CHECK(strip_markdown("1. first\n2) second") == "first\nsecond");
    CHECK(strip_markdown("> quoted line") == "quoted line");
    CHECK(strip_markdown("__strong__ _em_") == "strong em");
    CHECK(strip_markdown("snake_case_name stays") == "snake_case_name stays");
    CHECK(strip_markdown("---") == "");
    CHECK(strip_markdown("```\nlet x = 1;\n```") == "let x = 1;");
}

TEST_CASE("strip_markdown keeps plain paragraphs verbatim") {
    const std::string plain = "第一段,没有任何标记。\n\n第二段同样如此。";
    CHECK(strip_markdown(plain) == plain);
}

TEST_CASE("split_sentences on chinese terminators") {
    const std::string s = "第一句。第二句!第三句?尾巴";
    auto spans = split_sentences(s);
    REQUIRE(spans.size() == 4);
    CHECK(s.substr(spans[0].begin, spans[0].end - spans[0].begin) == "第一句。");
    CHECK(s.substr(spans[1].begin, spans[1].end - spans[1].begin) == "第二句!");
    CHECK(s.substr(spans[2].begin, spans[2].end - spans[2].begin) == "第三句?");
    CHECK(s.substr(spans[3].begin, spans[3].end - spans[3].begin) == "尾巴");
}

TEST_CASE("split_sentences does not break decimals or file names") {
    const std::string s = "Pi is 3.14 exactly. See notes.txt for more.";
    auto spans = split_sentences(s);
    REQUIRE(spans.size() == 2);
    CHECK(s.substr(spans[0].begin, spans[0].end - spans[0].begin) == "Pi is 3.14 exactly.");
}

TEST_CASE("split_sentences absorbs closing quotes") {
    const std::string s = "他说:\"够了。\"然后离开了。";
    auto spans = split_sentences(s);
    REQUIRE(spans.size() == 2);
    CHECK(s.substr(spans[0].begin, spans[0].end - spans[0].begin) == "他说:\"够了。\"");
}

TEST_CASE("split_sentences covers the text without overlap") {
    Lcg rng(23);
    for (int it = 0; it < 300; ++it) {
        std::string s = random_ws_text(rng, rng.below(50));
        auto spans = split_sentences(s);
        std::size_t prev_end = 0;
        for (const auto& span : spans) {
            CHECK(span.begin >= prev_end);
            CHECK(span.end > span.begin);
            CHECK(span.end <= s.size());
            prev_end = span.end;
        }
    }
}

TEST_CASE("split_sentences drops whitespace-only tails") {
    auto spans = split_sentences("完整一句。   ");
    REQUIRE(spans.size() == 1);
    CHECK(spans[0].end == 15); // terminator included, trailing spaces not
}
