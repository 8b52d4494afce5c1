#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace regulens {

// Minimal UTF-8 decoding: enough to validate input strictly and to walk
// codepoints for tokenization. Rejects overlong forms, surrogates and
// codepoints past U+10FFFF.

struct Utf8Char {
    char32_t cp = 0;
    int len = 0; // bytes consumed; 0 means invalid sequence
};

inline Utf8Char utf8_decode(std::string_view s, std::size_t pos) {
    auto byte = [&](std::size_t i) -> std::uint8_t {
        return static_cast<std::uint8_t>(s[i]);
    };
    std::uint8_t b0 = byte(pos);
    if (b0 < 0x80) return {b0, 1};
    auto cont = [&](std::size_t i) {
        return i < s.size() && (byte(i) & 0xC0) == 0x80;
    };
    if ((b0 & 0xE0) == 0xC0) {
        if (!cont(pos + 1)) return {0, 0};
        char32_t cp = ((b0 & 0x1F) << 6) | (byte(pos + 1) & 0x3F);
        if (cp < 0x80) return {0, 0};
        return {cp, 2};
    }
    if ((b0 & 0xF0) == 0xE0) {
        if (!cont(pos + 1) || !cont(pos + 2)) return {0, 0};
        char32_t cp = ((b0 & 0x0F) << 12) | ((byte(pos + 1) & 0x3F) << 6) |
                      (byte(pos + 2) & 0x3F);
        if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) return {0, 0};
        return {cp, 3};
    }
    if ((b0 & 0xF8) == 0xF0) {
        if (!cont(pos + 1) || !cont(pos + 2) || !cont(pos + 3)) return {0, 0};
        char32_t cp = ((b0 & 0x07) << 18) | ((byte(pos + 1) & 0x3F) << 12) |
                      ((byte(pos + 2) & 0x3F) << 6) | (byte(pos + 3) & 0x3F);
        if (cp < 0x10000 || cp > 0x10FFFF) return {0, 0};
        return {cp, 4};
    }
    return {0, 0};
}

inline bool utf8_valid(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        Utf8Char c = utf8_decode(s, i);
        if (c.len == 0) return false;
        i += static_cast<std::size_t>(c.len);
    }
    return true;
}

inline void utf8_append(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// Token-character test used by the tokenizer: ASCII alphanumerics, Latin-1
// letters, and any higher codepoint that is not in a common punctuation,
// currency, arrow/math or CJK-punctuation block. A full Unicode category
// table is out of proportion for this pipeline; the blocks below cover the
// separators that actually occur in regulatory text (curly quotes, dashes,
// ellipses, bullets).
inline bool is_token_char(char32_t cp) {
    if (cp < 0x80) {
        return (cp >= '0' && cp <= '9') || (cp >= 'A' && cp <= 'Z') ||
               (cp >= 'a' && cp <= 'z');
    }
    if (cp < 0x100) {
        // Latin-1: letters only (times and divide signs excluded).
        return (cp >= 0xC0 && cp != 0xD7 && cp != 0xF7);
    }
    if (cp >= 0x2000 && cp <= 0x206F) return false;  // general punctuation
    if (cp >= 0x20A0 && cp <= 0x20CF) return false;  // currency signs
    if (cp >= 0x2190 && cp <= 0x2BFF) return false;  // arrows, math, symbols
    if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
    if (cp >= 0xFE30 && cp <= 0xFE4F) return false;  // compatibility forms
    if (cp >= 0xFF00 && cp <= 0xFF0F) return false;  // fullwidth punctuation
    return true;
}

// ASCII + Latin-1 lowercasing; higher codepoints pass through unchanged.
inline char32_t lower_cp(char32_t cp) {
    if (cp >= 'A' && cp <= 'Z') return cp + 32;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
    return cp;
}

inline std::string to_lower(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        Utf8Char c = utf8_decode(s, i);
        if (c.len == 0) { // invalid byte: copy through untouched
            out.push_back(s[i]);
            ++i;
            continue;
        }
        utf8_append(out, lower_cp(c.cp));
        i += static_cast<std::size_t>(c.len);
    }
    return out;
}

} // namespace regulens
