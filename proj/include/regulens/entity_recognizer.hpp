#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "regulens/corpus_store.hpp"
#include "regulens/errors.hpp"
#include "regulens/textproc.hpp"

namespace regulens {

enum class EntityCategory {
    CARDINAL, ORG, DATE, PERSON, LAW, GPE, PRODUCT, NORP, ORDINAL,
    PERCENT, FAC, QUANTITY, LOC, TIME, MONEY, EVENT, LANGUAGE,
};

inline constexpr EntityCategory all_entity_categories[] = {
    EntityCategory::CARDINAL, EntityCategory::ORG,      EntityCategory::DATE,
    EntityCategory::PERSON,   EntityCategory::LAW,      EntityCategory::GPE,
    EntityCategory::PRODUCT,  EntityCategory::NORP,     EntityCategory::ORDINAL,
    EntityCategory::PERCENT,  EntityCategory::FAC,      EntityCategory::QUANTITY,
    EntityCategory::LOC,      EntityCategory::TIME,     EntityCategory::MONEY,
    EntityCategory::EVENT,    EntityCategory::LANGUAGE,
};

inline std::string category_name(EntityCategory c) {
    switch (c) {
        case EntityCategory::CARDINAL: return "CARDINAL";
        case EntityCategory::ORG: return "ORG";
        case EntityCategory::DATE: return "DATE";
        case EntityCategory::PERSON: return "PERSON";
        case EntityCategory::LAW: return "LAW";
        case EntityCategory::GPE: return "GPE";
        case EntityCategory::PRODUCT: return "PRODUCT";
        case EntityCategory::NORP: return "NORP";
        case EntityCategory::ORDINAL: return "ORDINAL";
        case EntityCategory::PERCENT: return "PERCENT";
        case EntityCategory::FAC: return "FAC";
        case EntityCategory::QUANTITY: return "QUANTITY";
        case EntityCategory::LOC: return "LOC";
        case EntityCategory::TIME: return "TIME";
        case EntityCategory::MONEY: return "MONEY";
        case EntityCategory::EVENT: return "EVENT";
        case EntityCategory::LANGUAGE: return "LANGUAGE";
    }
    return "CARDINAL";
}

inline EntityCategory parse_category(std::string_view s) {
    for (EntityCategory c : all_entity_categories)
        if (category_name(c) == s) return c;
    throw std::runtime_error("unknown entity category: " + std::string(s));
}

struct EntityMention {
    std::string doc_id;
    EntityCategory category = EntityCategory::CARDINAL;
    std::string surface;
    int sentence_index = 0;
    std::size_t begin = 0; // byte offsets within the sentence text
    std::size_t end = 0;

    bool operator==(const EntityMention&) const = default;
};

// Plain-text term lists, one lowercase entry per line. ORG and LAW combine a
// gazetteer with pattern rules; UNITS feeds the QUANTITY rule; the remaining
// categories are gazetteer-only.
struct Gazetteers {
    std::map<EntityCategory, std::vector<std::string>> entries;
    std::vector<std::string> units;

    static Gazetteers load(const std::filesystem::path& dir) {
        Gazetteers g;
        auto read_list = [&](const std::string& name) {
            auto path = dir / (name + ".txt");
            if (!std::filesystem::exists(path))
                throw std::runtime_error("missing gazetteer: " + path.string());
            std::vector<std::string> entries;
            for (const auto& line : split_lines(detail::read_file(path))) {
                std::string entry = trim(line);
                if (entry.empty()) continue;
                for (char& ch : entry)
                    if (ch >= 'A' && ch <= 'Z') ch = static_cast<char>(ch + 32);
                entries.push_back(entry);
            }
            return entries;
        };
        for (EntityCategory c :
             {EntityCategory::ORG, EntityCategory::LAW, EntityCategory::GPE,
              EntityCategory::LOC, EntityCategory::NORP, EntityCategory::LANGUAGE,
              EntityCategory::EVENT, EntityCategory::FAC, EntityCategory::PERSON,
              EntityCategory::PRODUCT})
            g.entries[c] = read_list(category_name(c));
        g.units = read_list("UNITS");
        return g;
    }
};

namespace ner {

// Rule priority (lower wins on equal-length spans); gazetteer-only
// categories follow the pattern rules in their listed order.
inline int priority_of(EntityCategory c) {
    switch (c) {
        case EntityCategory::PERCENT: return 0;
        case EntityCategory::MONEY: return 1;
        case EntityCategory::DATE: return 2;
        case EntityCategory::TIME: return 3;
        case EntityCategory::ORDINAL: return 4;
        case EntityCategory::QUANTITY: return 5;
        case EntityCategory::LAW: return 6;
        case EntityCategory::CARDINAL: return 7;
        case EntityCategory::ORG: return 8;
        case EntityCategory::GPE: return 9;
        case EntityCategory::LOC: return 10;
        case EntityCategory::NORP: return 11;
        case EntityCategory::LANGUAGE: return 12;
        case EntityCategory::EVENT: return 13;
        case EntityCategory::FAC: return 14;
        case EntityCategory::PERSON: return 15;
        case EntityCategory::PRODUCT: return 16;
    }
    return 99;
}

struct Candidate {
    std::size_t begin = 0;
    std::size_t end = 0;
    EntityCategory category = EntityCategory::CARDINAL;
};

inline bool is_digit(char c) { return c >= '0' && c <= '9'; }
inline bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
inline bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
inline bool is_alpha(char c) { return is_upper(c) || is_lower(c); }
inline bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }
inline char ascii_lower(char c) {
    return is_upper(c) ? static_cast<char>(c + 32) : c;
}

inline bool boundary_before(const std::string& s, std::size_t i) {
    return i == 0 || !is_alnum(s[i - 1]);
}
inline bool boundary_after(const std::string& s, std::size_t i) {
    return i >= s.size() || !is_alnum(s[i]);
}

// Maximal number starting at i: digits with internal [.,]-digit groups
// ("35.7", "1,000"). Returns i when s[i] is not a digit.
inline std::size_t scan_number(const std::string& s, std::size_t i) {
    if (i >= s.size() || !is_digit(s[i])) return i;
    std::size_t j = i;
    while (j < s.size() && is_digit(s[j])) ++j;
    while (j + 1 < s.size() && (s[j] == '.' || s[j] == ',') && is_digit(s[j + 1])) {
        ++j;
        while (j < s.size() && is_digit(s[j])) ++j;
    }
    return j;
}

inline std::size_t scan_digits(const std::string& s, std::size_t i) {
    std::size_t j = i;
    while (j < s.size() && is_digit(s[j])) ++j;
    return j;
}

// Case-insensitive literal word match at i with a trailing word boundary.
inline bool word_at(const std::string& s, std::size_t i, std::string_view word) {
    if (i + word.size() > s.size()) return false;
    for (std::size_t k = 0; k < word.size(); ++k)
        if (ascii_lower(s[i + k]) != ascii_lower(word[k])) return false;
    return boundary_after(s, i + word.size());
}

// Exact-case literal match at i with a trailing word boundary.
inline bool exact_at(const std::string& s, std::size_t i, std::string_view word) {
    if (i + word.size() > s.size()) return false;
    if (s.compare(i, word.size(), word) != 0) return false;
    return boundary_after(s, i + word.size());
}

inline const std::vector<std::string>& month_names() {
    static const std::vector<std::string> m = {
        "january", "february", "march",     "april",   "may",      "june",
        "july",    "august",   "september", "october", "november", "december"};
    return m;
}

inline const std::vector<std::string>& spelled_ordinals() {
    static const std::vector<std::string> o = {
        "first",      "second",     "third",      "fourth",    "fifth",
        "sixth",      "seventh",    "eighth",     "ninth",     "tenth",
        "eleventh",   "twelfth",    "thirteenth", "fourteenth", "fifteenth",
        "sixteenth",  "seventeenth", "eighteenth", "nineteenth", "twentieth"};
    return o;
}

inline const std::vector<std::string>& date_context_words() {
    static const std::vector<std::string> w = {
        "in", "since", "by", "until", "during", "year",
        "of", "from",  "to", "after", "before"};
    return w;
}

inline int number_value(const std::string& s, std::size_t begin, std::size_t end) {
    int v = 0;
    for (std::size_t i = begin; i < end && i - begin < 9; ++i)
        v = v * 10 + (s[i] - '0');
    return v;
}

inline void collect_percent(const std::string& s, std::vector<Candidate>& out) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!is_digit(s[i]) || !boundary_before(s, i)) continue;
        std::size_t j = scan_number(s, i);
        if (j < s.size() && s[j] == '%') {
            out.push_back({i, j + 1, EntityCategory::PERCENT});
        } else {
            std::size_t k = j;
            while (k < s.size() && s[k] == ' ') ++k;
            if (k > j && word_at(s, k, "percent"))
                out.push_back({i, k + 7, EntityCategory::PERCENT});
        }
    }
}

inline void collect_money(const std::string& s, std::vector<Candidate>& out) {
    static const std::vector<std::string> symbols = {"$", "\xE2\x82\xAC",
                                                     "\xC2\xA3", "\xC2\xA5"};
    static const std::vector<std::string> codes = {"USD", "EUR", "CNY", "GBP",
                                                   "JPY", "RMB", "CHF"};
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (const auto& sym : symbols) {
            if (s.compare(i, sym.size(), sym) != 0) continue;
            std::size_t k = i + sym.size();
            if (k < s.size() && s[k] == ' ') ++k;
            std::size_t j = scan_number(s, k);
            if (j > k) out.push_back({i, j, EntityCategory::MONEY});
        }
        for (const auto& code : codes) {
            if (!boundary_before(s, i) || !exact_at(s, i, code)) continue;
            std::size_t k = i + code.size();
            if (k < s.size() && s[k] == ' ') {
                std::size_t j = scan_number(s, k + 1);
                if (j > k + 1) out.push_back({i, j, EntityCategory::MONEY});
            }
        }
    }
}

inline void collect_date(const std::string& s, std::vector<Candidate>& out) {
    // ISO YYYY-MM-DD
    for (std::size_t i = 0; i + 10 <= s.size(); ++i) {
        if (!boundary_before(s, i)) continue;
        bool shaped = is_digit(s[i]) && is_digit(s[i + 1]) && is_digit(s[i + 2]) &&
                      is_digit(s[i + 3]) && s[i + 4] == '-' && is_digit(s[i + 5]) &&
                      is_digit(s[i + 6]) && s[i + 7] == '-' && is_digit(s[i + 8]) &&
                      is_digit(s[i + 9]) && boundary_after(s, i + 10);
        if (!shaped) continue;
        int month = number_value(s, i + 5, i + 7);
        int day = number_value(s, i + 8, i + 10);
        if (month >= 1 && month <= 12 && day >= 1 && day <= 31)
            out.push_back({i, i + 10, EntityCategory::DATE});
    }
    // Month DD, YYYY / Month YYYY
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!is_alpha(s[i]) || !boundary_before(s, i)) continue;
        for (const auto& month : month_names()) {
            if (!word_at(s, i, month)) continue;
            std::size_t after = i + month.size();
            if (after >= s.size() || s[after] != ' ') continue;
            std::size_t d0 = after + 1;
            std::size_t d1 = scan_digits(s, d0);
            if (d1 == d0) continue;
            if (d1 - d0 == 4 && boundary_after(s, d1)) {
                out.push_back({i, d1, EntityCategory::DATE}); // Month YYYY
            } else if (d1 - d0 <= 2 && d1 < s.size() && s[d1] == ',' &&
                       d1 + 1 < s.size() && s[d1 + 1] == ' ') {
                std::size_t y0 = d1 + 2;
                std::size_t y1 = scan_digits(s, y0);
                if (y1 - y0 == 4 && boundary_after(s, y1))
                    out.push_back({i, y1, EntityCategory::DATE});
            }
        }
    }
    // DD Month YYYY
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!is_digit(s[i]) || !boundary_before(s, i)) continue;
        std::size_t d1 = scan_digits(s, i);
        if (d1 - i > 2 || d1 >= s.size() || s[d1] != ' ') continue;
        for (const auto& month : month_names()) {
            if (!word_at(s, d1 + 1, month)) continue;
            std::size_t after = d1 + 1 + month.size();
            if (after >= s.size() || s[after] != ' ') continue;
            std::size_t y1 = scan_digits(s, after + 1);
            if (y1 - (after + 1) == 4 && boundary_after(s, y1))
                out.push_back({i, y1, EntityCategory::DATE});
        }
    }
    // standalone year 1900-2099 right after a date-context word
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!is_digit(s[i]) || !boundary_before(s, i)) continue;
        std::size_t j = scan_digits(s, i);
        if (j - i != 4 || !boundary_after(s, j)) continue;
        int year = number_value(s, i, j);
        if (year < 1900 || year > 2099) continue;
        std::size_t k = i;
        while (k > 0 && s[k - 1] == ' ') --k;
        std::size_t w1 = k;
        while (k > 0 && is_alpha(s[k - 1])) --k;
        if (k == w1 || w1 == i) continue;
        std::string prev;
        for (std::size_t p = k; p < w1; ++p) prev.push_back(ascii_lower(s[p]));
        const auto& ctx = date_context_words();
        if (std::find(ctx.begin(), ctx.end(), prev) != ctx.end())
            out.push_back({i, j, EntityCategory::DATE});
    }
}

inline void collect_time(const std::string& s, std::vector<Candidate>& out) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!is_digit(s[i]) || !boundary_before(s, i)) continue;
        std::size_t h1 = scan_digits(s, i);
        if (h1 - i > 2) continue;
        int hour = number_value(s, i, h1);
        // clock form H:MM(:SS)?
        if (h1 < s.size() && s[h1] == ':' && hour <= 23) {
            std::size_t m1 = scan_digits(s, h1 + 1);
            if (m1 - (h1 + 1) == 2 && number_value(s, h1 + 1, m1) <= 59) {
                std::size_t end = m1;
                if (end < s.size() && s[end] == ':') {
                    std::size_t s1 = scan_digits(s, end + 1);
                    if (s1 - (end + 1) == 2 && number_value(s, end + 1, s1) <= 59)
                        end = s1;
                }
                std::size_t k = end;
                if (k < s.size() && s[k] == ' ' &&
                    (word_at(s, k + 1, "am") || word_at(s, k + 1, "pm")))
                    end = k + 3;
                if (boundary_after(s, end))
                    out.push_back({i, end, EntityCategory::TIME});
                continue;
            }
        }
        // H am / H pm
        if (hour >= 1 && hour <= 12 && h1 < s.size() && s[h1] == ' ' &&
            (word_at(s, h1 + 1, "am") || word_at(s, h1 + 1, "pm")))
            out.push_back({i, h1 + 3, EntityCategory::TIME});
    }
}

inline void collect_ordinal(const std::string& s, std::vector<Candidate>& out) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (is_digit(s[i]) && boundary_before(s, i)) {
            std::size_t j = scan_digits(s, i);
            for (const char* suffix : {"st", "nd", "rd", "th"})
                if (word_at(s, j, suffix)) {
                    out.push_back({i, j + 2, EntityCategory::ORDINAL});
                    break;
                }
        }
        if (is_alpha(s[i]) && boundary_before(s, i)) {
            for (const auto& word : spelled_ordinals())
                if (word_at(s, i, word)) {
                    out.push_back({i, i + word.size(), EntityCategory::ORDINAL});
                    break;
                }
        }
    }
}

inline void collect_quantity(const std::string& s,
                             const std::vector<std::string>& units,
                             std::vector<Candidate>& out) {
    std::unordered_set<std::string> unit_set(units.begin(), units.end());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!is_digit(s[i]) || !boundary_before(s, i)) continue;
        std::size_t j = scan_number(s, i);
        std::size_t k = j;
        if (k < s.size() && s[k] == ' ') ++k;
        std::size_t u1 = k;
        while (u1 < s.size() && is_alpha(s[u1])) ++u1;
        if (u1 == k || !boundary_after(s, u1)) continue;
        std::string unit;
        for (std::size_t p = k; p < u1; ++p) unit.push_back(ascii_lower(s[p]));
        if (unit_set.count(unit))
            out.push_back({i, u1, EntityCategory::QUANTITY});
    }
}

inline void collect_law_patterns(const std::string& s,
                                 std::vector<Candidate>& out) {
    // <title> CFR <part>(.<sub>)?
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!is_digit(s[i]) || !boundary_before(s, i)) continue;
        std::size_t t1 = scan_digits(s, i);
        if (s.compare(t1, 5, " CFR ") != 0) continue;
        std::size_t p0 = t1 + 5;
        std::size_t p1 = scan_digits(s, p0);
        if (p1 == p0) continue;
        std::size_t end = p1;
        if (end + 1 < s.size() && s[end] == '.' && is_digit(s[end + 1])) {
            std::size_t q1 = scan_digits(s, end + 1);
            if (q1 > end + 1) end = q1;
        }
        if (boundary_after(s, end)) out.push_back({i, end, EntityCategory::LAW});
    }
    // Regulation/Directive (EU|EC) [No ]NNN/NNNN
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!boundary_before(s, i)) continue;
        std::size_t k = 0;
        if (s.compare(i, 11, "Regulation ") == 0) k = i + 11;
        else if (s.compare(i, 10, "Directive ") == 0) k = i + 10;
        else continue;
        if (s.compare(k, 4, "(EU)") == 0 || s.compare(k, 4, "(EC)") == 0)
            k += 4;
        else
            continue;
        if (k >= s.size() || s[k] != ' ') continue;
        ++k;
        if (s.compare(k, 3, "No ") == 0) k += 3;
        else if (s.compare(k, 4, "No. ") == 0) k += 4;
        std::size_t a1 = scan_digits(s, k);
        if (a1 == k || a1 >= s.size() || s[a1] != '/') continue;
        std::size_t b1 = scan_digits(s, a1 + 1);
        if (b1 > a1 + 1 && boundary_after(s, b1))
            out.push_back({i, b1, EntityCategory::LAW});
    }
    // NNN/NNN/(EC|EEC|EU)
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!is_digit(s[i]) || !boundary_before(s, i)) continue;
        std::size_t a1 = scan_digits(s, i);
        if (a1 >= s.size() || s[a1] != '/') continue;
        std::size_t b1 = scan_digits(s, a1 + 1);
        if (b1 == a1 + 1 || b1 >= s.size() || s[b1] != '/') continue;
        std::size_t end = 0;
        if (exact_at(s, b1 + 1, "EEC")) end = b1 + 4;
        else if (exact_at(s, b1 + 1, "EC") || exact_at(s, b1 + 1, "EU"))
            end = b1 + 3;
        if (end != 0) out.push_back({i, end, EntityCategory::LAW});
    }
    // ISO|IEC|EN NNNNN(-N)?
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!boundary_before(s, i)) continue;
        std::size_t k = 0;
        if (s.compare(i, 4, "ISO ") == 0 || s.compare(i, 4, "IEC ") == 0)
            k = i + 4;
        else if (s.compare(i, 3, "EN ") == 0)
            k = i + 3;
        else
            continue;
        std::size_t n1 = scan_digits(s, k);
        if (n1 == k) continue;
        std::size_t end = n1;
        if (end < s.size() && s[end] == '-') {
            std::size_t e1 = scan_digits(s, end + 1);
            if (e1 > end + 1) end = e1;
        }
        if (boundary_after(s, end)) out.push_back({i, end, EntityCategory::LAW});
    }
}

inline void collect_cardinal(const std::string& s, std::vector<Candidate>& out) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!is_digit(s[i]) || !boundary_before(s, i)) continue;
        std::size_t j = scan_number(s, i);
        if (boundary_after(s, j)) out.push_back({i, j, EntityCategory::CARDINAL});
    }
}

// Capitalized run (lowercase connectors allowed inside) ending in an
// organization suffix word: "State Food and Drug Administration".
inline void collect_org_heuristic(const std::string& s,
                                  std::vector<Candidate>& out) {
    static const std::vector<std::string> suffixes = {
        "Administration", "Agency", "Commission", "Committee",
        "Forum",          "Inc",    "Ltd"};
    static const std::vector<std::string> connectors = {"of", "and", "for", "the"};

    struct Word {
        std::size_t begin, end;
        bool capitalized, connector;
    };
    std::vector<Word> words;
    for (std::size_t i = 0; i < s.size();) {
        if (!is_alpha(s[i])) {
            ++i;
            continue;
        }
        if (!boundary_before(s, i)) { // skip into the next boundary
            while (i < s.size() && is_alnum(s[i])) ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && is_alpha(s[j])) ++j;
        if (!boundary_after(s, j)) {
            i = j + 1;
            continue;
        }
        std::string text = s.substr(i, j - i);
        bool conn = std::find(connectors.begin(), connectors.end(), text) !=
                    connectors.end();
        words.push_back({i, j, is_upper(s[i]), conn});
        i = j;
    }
    auto adjacent = [&](const Word& a, const Word& b) {
        for (std::size_t p = a.end; p < b.begin; ++p)
            if (s[p] != ' ') return false;
        return b.begin > a.end;
    };
    for (std::size_t w = 0; w < words.size(); ++w) {
        std::string text = s.substr(words[w].begin, words[w].end - words[w].begin);
        if (std::find(suffixes.begin(), suffixes.end(), text) == suffixes.end())
            continue;
        std::size_t first = w;
        while (first > 0 && (words[first - 1].capitalized || words[first - 1].connector) &&
               adjacent(words[first - 1], words[first]))
            --first;
        while (first < w && words[first].connector && !words[first].capitalized)
            ++first;
        if (first < w)
            out.push_back({words[first].begin, words[w].end, EntityCategory::ORG});
    }
}

// Case-insensitive gazetteer scan; entries match whole words only.
inline void collect_gazetteer(const std::string& lower, EntityCategory category,
                              const std::vector<std::string>& entries,
                              std::vector<Candidate>& out) {
    for (const auto& entry : entries) {
        std::size_t from = 0;
        while (true) {
            std::size_t at = lower.find(entry, from);
            if (at == std::string::npos) break;
            if (boundary_before(lower, at) &&
                boundary_after(lower, at + entry.size()))
                out.push_back({at, at + entry.size(), category});
            from = at + 1;
        }
    }
}

} // namespace ner

// Longest-match-wins, left-to-right, non-overlapping selection over all rule
// and gazetteer candidates; equal spans resolve by rule priority.
inline std::vector<EntityMention> recognize_entities(const Sentence& sentence,
                                                     const Gazetteers& gz) {
    const std::string& s = sentence.text;
    std::string lower;
    lower.reserve(s.size());
    for (char c : s) lower.push_back(ner::ascii_lower(c));

    std::vector<ner::Candidate> candidates;
    ner::collect_percent(s, candidates);
    ner::collect_money(s, candidates);
    ner::collect_date(s, candidates);
    ner::collect_time(s, candidates);
    ner::collect_ordinal(s, candidates);
    ner::collect_quantity(s, gz.units, candidates);
    ner::collect_law_patterns(s, candidates);
    ner::collect_gazetteer(lower, EntityCategory::LAW,
                           gz.entries.at(EntityCategory::LAW), candidates);
    ner::collect_cardinal(s, candidates);
    ner::collect_org_heuristic(s, candidates);
    for (EntityCategory c :
         {EntityCategory::ORG, EntityCategory::GPE, EntityCategory::LOC,
          EntityCategory::NORP, EntityCategory::LANGUAGE, EntityCategory::EVENT,
          EntityCategory::FAC, EntityCategory::PERSON, EntityCategory::PRODUCT})
        ner::collect_gazetteer(lower, c, gz.entries.at(c), candidates);

    std::sort(candidates.begin(), candidates.end(),
              [](const ner::Candidate& a, const ner::Candidate& b) {
                  if (a.begin != b.begin) return a.begin < b.begin;
                  if (a.end != b.end) return a.end > b.end;
                  return ner::priority_of(a.category) <
                         ner::priority_of(b.category);
              });

    std::vector<EntityMention> mentions;
    std::size_t cursor = 0;
    for (const auto& c : candidates) {
        if (c.begin < cursor) continue;
        mentions.push_back({sentence.doc_id, c.category,
                            s.substr(c.begin, c.end - c.begin), sentence.index,
                            c.begin, c.end});
        cursor = c.end;
    }
    return mentions;
}

// NER over every document: boilerplate-stripped, sentence-segmented, then
// per-sentence recognition. Mentions are persisted to mentions.jsonl.
inline std::vector<EntityMention> run_ner(const Workspace& ws,
                                          const Gazetteers& gz) {
    auto docs = load_documents(ws);
    std::vector<EntityMention> all;
    for (const auto& doc : docs) {
        auto sentences =
            segment_sentences(strip_boilerplate_text(doc.raw_text), doc.doc_id);
        for (const auto& sentence : sentences) {
            auto found = recognize_entities(sentence, gz);
            all.insert(all.end(), found.begin(), found.end());
        }
    }
    std::string blob;
    for (const auto& m : all) {
        nlohmann::json rec = {{"doc_id", m.doc_id},
                              {"category", category_name(m.category)},
                              {"surface", m.surface},
                              {"sentence_index", m.sentence_index},
                              {"begin", m.begin},
                              {"end", m.end}};
        blob += rec.dump() + "\n";
    }
    detail::write_file(ws.mentions_path(), blob);
    return all;
}

inline std::vector<EntityMention> load_mentions(const Workspace& ws) {
    std::vector<EntityMention> out;
    for (const auto& line : split_lines(detail::read_file(ws.mentions_path()))) {
        if (trim(line).empty()) continue;
        nlohmann::json rec = nlohmann::json::parse(line);
        out.push_back({rec.at("doc_id").get<std::string>(),
                       parse_category(rec.at("category").get<std::string>()),
                       rec.at("surface").get<std::string>(),
                       rec.at("sentence_index").get<int>(),
                       rec.at("begin").get<std::size_t>(),
                       rec.at("end").get<std::size_t>()});
    }
    return out;
}

struct DistributionRow {
    EntityCategory category = EntityCategory::CARDINAL;
    std::int64_t count = 0;
    double percentage = 0.0;
};

struct EntityDistribution {
    std::vector<DistributionRow> rows; // count descending, then name
    std::int64_t total = 0;
};

inline EntityDistribution distribution_of(const std::vector<EntityMention>& mentions) {
    std::map<EntityCategory, std::int64_t> counts;
    for (const auto& m : mentions) ++counts[m.category];
    EntityDistribution dist;
    for (const auto& [category, count] : counts) dist.total += count;
    for (const auto& [category, count] : counts)
        dist.rows.push_back(
            {category, count,
             dist.total > 0 ? 100.0 * static_cast<double>(count) /
                                  static_cast<double>(dist.total)
                            : 0.0});
    std::sort(dist.rows.begin(), dist.rows.end(),
              [](const DistributionRow& a, const DistributionRow& b) {
                  if (a.count != b.count) return a.count > b.count;
                  return category_name(a.category) < category_name(b.category);
              });
    return dist;
}

struct MentionFilter {
    std::optional<std::string> country;
    std::optional<int> year;
};

inline EntityDistribution entity_distribution(const Workspace& ws,
                                              const MentionFilter& f = {}) {
    auto mentions = load_mentions(ws);
    if (!f.country && !f.year) return distribution_of(mentions);

    std::unordered_map<std::string, DocumentHeader> headers;
    for (const auto& h : list_documents(ws)) headers[h.doc_id] = h;
    std::string country = f.country ? normalize_country(*f.country) : "";
    std::vector<EntityMention> kept;
    for (const auto& m : mentions) {
        const auto& h = headers.at(m.doc_id);
        if (f.country && h.country != country) continue;
        if (f.year && h.year != *f.year) continue;
        kept.push_back(m);
    }
    return distribution_of(kept);
}

struct TopEntityRow {
    int year = 0;
    int rank = 1;
    std::string surface;
    std::int64_t count = 0;
};

// Per-year most frequent surfaces (whitespace-collapsed), ties to the
// lexicographically smaller surface; years with fewer distinct surfaces get
// shorter lists.
inline std::vector<TopEntityRow> top_entities_by_year(const Workspace& ws,
                                                      const std::string& country,
                                                      int top_n = 3) {
    if (top_n <= 0) throw config_error("top_n must be positive");
    std::string wanted = normalize_country(country);
    std::unordered_map<std::string, DocumentHeader> headers;
    bool known = false;
    for (const auto& h : list_documents(ws)) {
        headers[h.doc_id] = h;
        if (h.country == wanted) known = true;
    }
    if (!known) throw std::runtime_error("unknown country: " + country);

    std::map<int, std::map<std::string, std::int64_t>> by_year;
    for (const auto& m : load_mentions(ws)) {
        const auto& h = headers.at(m.doc_id);
        if (h.country != wanted) continue;
        std::string surface;
        for (char c : m.surface) {
            if (c == ' ' && !surface.empty() && surface.back() == ' ') continue;
            surface.push_back(c == '\t' || c == '\n' ? ' ' : c);
        }
        ++by_year[h.year][surface];
    }

    std::vector<TopEntityRow> rows;
    for (const auto& [year, counts] : by_year) {
        std::vector<std::pair<std::string, std::int64_t>> ranked(counts.begin(),
                                                                 counts.end());
        std::sort(ranked.begin(), ranked.end(),
                  [](const auto& a, const auto& b) {
                      if (a.second != b.second) return a.second > b.second;
                      return a.first < b.first;
                  });
        int rank = 1;
        for (const auto& [surface, count] : ranked) {
            if (rank > top_n) break;
            rows.push_back({year, rank++, surface, count});
        }
    }
    return rows;
}

} // namespace regulens
