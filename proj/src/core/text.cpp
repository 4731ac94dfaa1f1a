#include "interpcast/text.hpp"

#include <algorithm>
#include <cctype>

namespace interpcast::text {

namespace {

std::size_t utf8_len(unsigned char lead) {
    if (lead < 0x80) return 1;
    if ((lead >> 5) == 0x6) return 2;
    if ((lead >> 4) == 0xe) return 3;
    if ((lead >> 3) == 0x1e) return 4;
    return 1; // invalid lead byte, advance by one
}

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

} // namespace

std::size_t codepoint_count(std::string_view s) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < s.size(); i += utf8_len(static_cast<unsigned char>(s[i]))) {
        ++n;
    }
    return n;
}

std::size_t codepoint_offset(std::string_view s, std::size_t n) {
    std::size_t i = 0;
    while (n > 0 && i < s.size()) {
        i += utf8_len(static_cast<unsigned char>(s[i]));
        --n;
    }
    return std::min(i, s.size());
}

std::string normalize_whitespace(std::string_view s) {
    // Split into lines with CR/CRLF folded to LF.
    std::vector<std::string> lines;
    std::string cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '\r') {
            if (i + 1 < s.size() && s[i + 1] == '\n') ++i;
            lines.push_back(cur);
            cur.clear();
        } else if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    lines.push_back(cur);

    for (auto& line : lines) {
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t')) {
            line.pop_back();
        }
    }

    std::string out;
    bool prev_blank = true; // swallow leading blank lines
    for (const auto& line : lines) {
        if (line.empty()) {
            if (!prev_blank) out += "\n\n";
            prev_blank = true;
        } else {
            if (!prev_blank) out += '\n';
            out += line;
            prev_blank = false;
        }
    }
    // Collapsing appended "\n\n" for each blank run; trim a trailing run.
    while (!out.empty() && out.back() == '\n') {
        out.pop_back();
    }
    return out;
}

std::string collapse_spaces(std::string_view s) {
    std::string out;
    bool in_space = true;
    for (char c : s) {
        if (is_ascii_space(c)) {
            in_space = true;
        } else {
            if (in_space && !out.empty()) out.push_back(' ');
            out.push_back(c);
            in_space = false;
        }
    }
    return out;
}

namespace {

// Strips inline markdown from one line: images, links, emphasis, inline code.
std::string strip_inline(std::string_view line) {
    std::string out;
    std::size_t i = 0;
    auto n = line.size();

    auto emphasis_run = [&](std::size_t pos, char mark) {
        std::size_t k = 0;
        while (pos + k < n && line[pos + k] == mark && k < 3) ++k;
        return k;
    };

    while (i < n) {
        char c = line[i];
        // ![alt](url) -> alt
        if (c == '!' && i + 1 < n && line[i + 1] == '[') {
            auto close = line.find(']', i + 2);
            if (close != std::string_view::npos && close + 1 < n && line[close + 1] == '(') {
                auto paren = line.find(')', close + 2);
                if (paren != std::string_view::npos) {
                    out += strip_inline(line.substr(i + 2, close - i - 2));
                    i = paren + 1;
                    continue;
                }
            }
        }
        // [text](url) -> text
        if (c == '[') {
            auto close = line.find(']', i + 1);
            if (close != std::string_view::npos && close + 1 < n && line[close + 1] == '(') {
                auto paren = line.find(')', close + 2);
                if (paren != std::string_view::npos) {
                    out += strip_inline(line.substr(i + 1, close - i - 1));
                    i = paren + 1;
                    continue;
                }
            }
        }
        // `code` -> code, content verbatim
        if (c == '`') {
            auto close = line.find('`', i + 1);
            if (close != std::string_view::npos) {
                out += line.substr(i + 1, close - i - 1);
                i = close + 1;
                continue;
            }
        }
        // *em*, **strong**, ***both*** -> inner text
        if (c == '*') {
            std::size_t open = emphasis_run(i, '*');
            auto close = line.find(std::string(open, '*'), i + open);
            if (close != std::string_view::npos && close > i + open) {
                out += strip_inline(line.substr(i + open, close - i - open));
                i = close + open;
                continue;
            }
        }
        // _em_ / __strong__ only at word boundaries, so snake_case survives
        if (c == '_') {
            bool boundary = out.empty() || is_ascii_space(out.back()) ||
                            std::ispunct(static_cast<unsigned char>(out.back()));
            std::size_t open = emphasis_run(i, '_');
            if (boundary) {
                auto close = line.find(std::string(open, '_'), i + open);
                bool close_ok = close != std::string_view::npos && close > i + open &&
                                (close + open >= n ||
                                 !std::isalnum(static_cast<unsigned char>(line[close + open])));
                if (close_ok) {
                    out += strip_inline(line.substr(i + open, close - i - open));
                    i = close + open;
                    continue;
                }
            }
        }
        out.push_back(c);
        ++i;
    }
    return out;
}

bool is_hrule(std::string_view t) {
    if (t.size() < 3) return false;
    char mark = t[0];
    if (mark != '-' && mark != '*' && mark != '_') return false;
    return t.find_first_not_of(mark) == std::string_view::npos;
}

std::string_view trim_view(std::string_view v) {
    while (!v.empty() && is_ascii_space(v.front())) v.remove_prefix(1);
    while (!v.empty() && is_ascii_space(v.back())) v.remove_suffix(1);
    return v;
}

} // namespace

std::string strip_markdown(std::string_view s) {
    std::string out;
    std::size_t pos = 0;
    bool in_fence = false;
    while (pos <= s.size()) {
        auto nl = s.find('\n', pos);
        std::string_view line = s.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                                           : nl - pos);
        pos = nl == std::string_view::npos ? s.size() + 1 : nl + 1;

        std::string_view t = trim_view(line);
        if (t.starts_with("```") || t.starts_with("~~~")) {
            in_fence = !in_fence;
            continue; // fence marker line dropped, content kept verbatim
        }
        if (in_fence) {
            out += line;
            out += '\n';
            continue;
        }
        if (is_hrule(t)) {
            out += '\n';
            continue;
        }

        std::string_view rest = line;
        // heading markers
        if (t.starts_with('#')) {
            std::size_t h = 0;
            while (h < t.size() && t[h] == '#') ++h;
            if (h <= 6 && h < t.size() && t[h] == ' ') {
                rest = t.substr(h + 1);
            } else if (h <= 6 && h == t.size()) {
                rest = std::string_view{};
            }
        }
        // blockquote markers, possibly nested
        while (true) {
            std::string_view r = trim_view(rest);
            if (r.starts_with("> ")) {
                rest = r.substr(2);
            } else if (r == ">") {
                rest = std::string_view{};
                break;
            } else {
                break;
            }
        }
        // list markers
        {
            std::string_view r = rest;
            std::size_t indent = 0;
            while (indent < r.size() && (r[indent] == ' ' || r[indent] == '\t')) ++indent;
            std::string_view body = r.substr(indent);
            if (body.size() >= 2 && (body[0] == '-' || body[0] == '*' || body[0] == '+') &&
                body[1] == ' ') {
                rest = body.substr(2);
            } else {
                std::size_t d = 0;
                while (d < body.size() && std::isdigit(static_cast<unsigned char>(body[d]))) ++d;
                if (d > 0 && d + 1 < body.size() && (body[d] == '.' || body[d] == ')') &&
                    body[d + 1] == ' ') {
                    rest = body.substr(d + 2);
                }
            }
        }

        out += strip_inline(rest);
        out += '\n';
    }
    if (!out.empty() && out.back() == '\n') out.pop_back();
    return out;
}

std::vector<SentenceSpan> split_sentences(std::string_view s) {
    // Terminators: 。！？ (3-byte UTF-8) and ASCII .!?
    auto terminator_len = [&](std::size_t i) -> std::size_t {
        char c = s[i];
        if (c == '.' || c == '!' || c == '?') return 1;
        if (i + 2 < s.size() + 1 && static_cast<unsigned char>(c) == 0xe3) {
            std::string_view u = s.substr(i, 3);
            if (u == "\xe3\x80\x82") return 3; // 。
        }
        if (static_cast<unsigned char>(c) == 0xef && i + 2 < s.size() + 1) {
            std::string_view u = s.substr(i, 3);
            if (u == "\xef\xbc\x81" || u == "\xef\xbc\x9f") return 3; // ！ ？
        }
        return 0;
    };
    auto closing_quote_len = [&](std::size_t i) -> std::size_t {
        char c = s[i];
        if (c == '"' || c == '\'' || c == ')') return 1;
        if (i + 2 < s.size() + 1) {
            std::string_view u = s.substr(i, 3);
            if (u == "\xe2\x80\x9d" || u == "\xe2\x80\x99" || // ” ’
                u == "\xe3\x80\x8d" || u == "\xe3\x80\x8f" || // 」 』
                u == "\xef\xbc\x89") {                        // ）
                return 3;
            }
        }
        return 0;
    };

    std::vector<SentenceSpan> spans;
    std::size_t begin = 0;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t tl = terminator_len(i);
        if (tl == 0) {
            ++i;
            continue;
        }
        // absorb a run of terminators ("?!", "。。")
        std::size_t end = i;
        while (end < s.size()) {
            std::size_t l = terminator_len(end);
            if (l == 0) break;
            end += l;
        }
        // an ASCII-terminated run followed by an alphanumeric char is not a
        // sentence end (decimals, versions, file names)
        bool ascii_tail = s[end - 1] == '.' || s[end - 1] == '!' || s[end - 1] == '?';
        if (ascii_tail && end < s.size() && std::isalnum(static_cast<unsigned char>(s[end]))) {
            i = end;
            continue;
        }
        // absorb closing quotes after the terminator run
        while (end < s.size()) {
            std::size_t l = closing_quote_len(end);
            if (l == 0) break;
            end += l;
        }
        spans.push_back({begin, end});
        // skip whitespace up to the next sentence
        while (end < s.size() && is_ascii_space(s[end])) ++end;
        begin = end;
        i = end;
    }
    if (begin < s.size()) {
        std::string_view tail = s.substr(begin);
        if (!trim_view(tail).empty()) {
            spans.push_back({begin, s.size()});
        }
    }
    return spans;
}

} // namespace interpcast::text
