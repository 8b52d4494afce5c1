#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "regulens/default_lists.hpp"
#include "regulens/porter.hpp"
#include "regulens/utf8.hpp"

namespace regulens {

struct Sentence {
    std::string doc_id;
    int index = 0;
    std::string text;
};

inline std::string trim(std::string_view s) {
    const char* ws = " \t\r\n\f\v";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.emplace_back(text.substr(start));
            break;
        }
        std::string_view line = text.substr(start, nl - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.emplace_back(line);
        start = nl + 1;
    }
    return lines;
}

// Load a plain-text list file, one entry per line, blank lines skipped.
inline std::vector<std::string> load_list_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("path not found: " + path);
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    std::vector<std::string> entries;
    for (auto& line : split_lines(content)) {
        std::string t = trim(line);
        if (!t.empty()) entries.push_back(std::move(t));
    }
    return entries;
}

// Drop lines whose exact trimmed form repeats at least `min_repeats` times
// within the document (page headers/footers), then collapse blank-line runs.
// Blank lines are exempt from the repeat rule; they are only collapsed.
inline std::string strip_boilerplate(const std::vector<std::string>& lines,
                                     int min_repeats = 3) {
    std::unordered_map<std::string, int> freq;
    std::vector<std::string> trimmed;
    trimmed.reserve(lines.size());
    for (const auto& line : lines) {
        trimmed.push_back(trim(line));
        if (!trimmed.back().empty()) ++freq[trimmed.back()];
    }
    std::string out;
    bool pending_blank = false;
    bool wrote_any = false;
    for (const auto& t : trimmed) {
        if (t.empty()) {
            pending_blank = true;
            continue;
        }
        if (freq[t] >= min_repeats) continue;
        if (wrote_any) {
            out.push_back('\n');
            if (pending_blank) out.push_back('\n');
        }
        out.append(t);
        pending_blank = false;
        wrote_any = true;
    }
    return out;
}

inline std::string strip_boilerplate_text(std::string_view text,
                                          int min_repeats = 3) {
    return strip_boilerplate(split_lines(text), min_repeats);
}

namespace detail {

inline bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

inline bool is_upper_start(std::string_view text, std::size_t pos) {
    if (pos >= text.size()) return false;
    unsigned char c = static_cast<unsigned char>(text[pos]);
    if (c >= 'A' && c <= 'Z') return true;
    Utf8Char u = utf8_decode(text, pos);
    return u.len > 0 && u.cp >= 0xC0 && u.cp <= 0xDE && u.cp != 0xD7;
}

// True when text[0..dot] ends with an abbreviation entry (entries carry
// their trailing dot, e.g. "Fig."), with a non-word character before it.
inline bool ends_with_abbreviation(std::string_view text, std::size_t dot,
                                   const std::vector<std::string>& abbrevs) {
    for (const auto& a : abbrevs) {
        if (a.empty() || a.back() != '.') continue;
        if (dot + 1 < a.size()) continue;
        std::size_t start = dot + 1 - a.size();
        if (text.substr(start, a.size()) != a) continue;
        if (start == 0) return true;
        unsigned char prev = static_cast<unsigned char>(text[start - 1]);
        bool word_char = (prev >= 'a' && prev <= 'z') ||
                         (prev >= 'A' && prev <= 'Z') ||
                         (prev >= '0' && prev <= '9');
        if (!word_char) return true;
    }
    return false;
}

} // namespace detail

// Split at '.', '?' or '!' followed by whitespace and an uppercase letter,
// or at end of text. Abbreviation entries suppress '.' splits; a dot between
// two digits is a decimal point and never splits.
inline std::vector<Sentence> segment_sentences(
    std::string_view text, const std::string& doc_id = "",
    const std::vector<std::string>& abbrevs = default_abbreviations()) {
    std::vector<Sentence> out;
    auto emit = [&](std::size_t begin, std::size_t end) {
        std::string t = trim(text.substr(begin, end - begin));
        if (t.empty()) return;
        out.push_back({doc_id, static_cast<int>(out.size()), std::move(t)});
    };
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c != '.' && c != '?' && c != '!') continue;
        if (c == '.') {
            if (i > 0 && i + 1 < text.size() &&
                detail::is_ascii_digit(text[i - 1]) &&
                detail::is_ascii_digit(text[i + 1]))
                continue;
            if (detail::ends_with_abbreviation(text, i, abbrevs)) continue;
        }
        std::size_t j = i + 1;
        while (j < text.size() &&
               (text[j] == ' ' || text[j] == '\t' || text[j] == '\n' ||
                text[j] == '\r' || text[j] == '\f' || text[j] == '\v'))
            ++j;
        bool boundary = (j > i + 1 && detail::is_upper_start(text, j)) ||
                        j == text.size();
        if (!boundary) continue;
        emit(start, i + 1);
        start = i + 1;
    }
    emit(start, text.size());
    return out;
}

// Maximal runs of letters and digits form tokens; '-' and apostrophes join
// two token characters ("post-market" stays whole). Everything else splits.
inline std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t i = 0;
    while (i < text.size()) {
        Utf8Char c = utf8_decode(text, i);
        if (c.len == 0) { // invalid byte: separator
            if (!current.empty()) {
                tokens.push_back(std::move(current));
                current.clear();
            }
            ++i;
            continue;
        }
        std::size_t next = i + static_cast<std::size_t>(c.len);
        bool joiner = (c.cp == '-' || c.cp == '\'' || c.cp == 0x2019);
        if (is_token_char(c.cp)) {
            utf8_append(current, c.cp);
        } else if (joiner && !current.empty() && next < text.size()) {
            Utf8Char n = utf8_decode(text, next);
            if (n.len > 0 && is_token_char(n.cp)) {
                utf8_append(current, c.cp);
            } else {
                tokens.push_back(std::move(current));
                current.clear();
            }
        } else {
            if (!current.empty()) {
                tokens.push_back(std::move(current));
                current.clear();
            }
        }
        i = next;
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

struct TokenSpan {
    std::string text;
    std::size_t begin = 0; // byte offsets into the source string
    std::size_t end = 0;
};

// Same segmentation as tokenize(), with byte spans kept for entity rules.
inline std::vector<TokenSpan> tokenize_spans(std::string_view text) {
    std::vector<TokenSpan> tokens;
    std::string current;
    std::size_t token_begin = 0;
    std::size_t i = 0;
    auto flush = [&](std::size_t end_pos) {
        if (!current.empty()) {
            tokens.push_back({std::move(current), token_begin, end_pos});
            current.clear();
        }
    };
    while (i < text.size()) {
        Utf8Char c = utf8_decode(text, i);
        if (c.len == 0) {
            flush(i);
            ++i;
            continue;
        }
        std::size_t next = i + static_cast<std::size_t>(c.len);
        bool joiner = (c.cp == '-' || c.cp == '\'' || c.cp == 0x2019);
        bool take = false;
        if (is_token_char(c.cp)) {
            take = true;
        } else if (joiner && !current.empty() && next < text.size()) {
            Utf8Char n = utf8_decode(text, next);
            take = n.len > 0 && is_token_char(n.cp);
        }
        if (take) {
            if (current.empty()) token_begin = i;
            utf8_append(current, c.cp);
        } else {
            flush(i);
        }
        i = next;
    }
    flush(text.size());
    return tokens;
}

struct NormalizeOptions {
    const std::unordered_set<std::string>* stopwords = &default_stopword_set();
    bool stemming = true;
};

// Lowercase, drop stopwords, Porter-stem (letters-only tokens; tokens with
// digits, hyphens or apostrophes pass through unstemmed).
inline std::vector<std::string> normalize(const std::vector<std::string>& tokens,
                                          const NormalizeOptions& opts = {}) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& tok : tokens) {
        std::string low = to_lower(tok);
        if (low.empty()) continue;
        if (opts.stopwords && opts.stopwords->count(low)) continue;
        out.push_back(opts.stemming ? porter_stem(low) : std::move(low));
    }
    return out;
}

inline std::vector<std::string> normalize_text(std::string_view text,
                                               const NormalizeOptions& opts = {}) {
    return normalize(tokenize(text), opts);
}

} // namespace regulens
