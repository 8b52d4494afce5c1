#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "regulens/corpus_store.hpp"
#include "regulens/errors.hpp"
#include "regulens/textproc.hpp"
#include "regulens/utf8.hpp"

namespace regulens {

struct TrendPoint {
    int year = 0;
    std::int64_t count = 0;

    bool operator==(const TrendPoint&) const = default;
};

struct TrendSeries {
    std::string term;
    std::string country;
    std::vector<TrendPoint> points; // years ascending, dense, zero-filled
};

namespace detail {

inline std::vector<std::string> lower_tokens(std::string_view text) {
    auto tokens = tokenize(text);
    for (auto& t : tokens) t = to_lower(t);
    return tokens;
}

// Non-overlapping greedy left-to-right occurrences of `needle` in `haystack`.
inline std::int64_t count_token_sequence(const std::vector<std::string>& haystack,
                                         const std::vector<std::string>& needle) {
    if (needle.empty() || haystack.size() < needle.size()) return 0;
    std::int64_t count = 0;
    std::size_t i = 0;
    while (i + needle.size() <= haystack.size()) {
        bool hit = true;
        for (std::size_t k = 0; k < needle.size(); ++k)
            if (haystack[i + k] != needle[k]) {
                hit = false;
                break;
            }
        if (hit) {
            ++count;
            i += needle.size();
        } else {
            ++i;
        }
    }
    return count;
}

inline std::vector<std::string> term_tokens(const std::string& term) {
    if (trim(term).empty()) throw config_error("trend: term must be nonempty");
    auto needle = lower_tokens(term);
    if (needle.empty()) throw config_error("trend: term must be nonempty");
    return needle;
}

} // namespace detail

// Case-insensitive count of the exact token sequence over raw (unstemmed)
// tokens; semantic variants do not match.
inline std::int64_t count_term(const std::vector<Document>& documents,
                               const std::string& term) {
    auto needle = detail::term_tokens(term);
    std::int64_t total = 0;
    for (const auto& doc : documents)
        total +=
            detail::count_token_sequence(detail::lower_tokens(doc.raw_text), needle);
    return total;
}

// One series per requested country, dense over the workspace's year range.
inline std::vector<TrendSeries> trend_series(const Workspace& ws,
                                             const std::string& term,
                                             const std::vector<std::string>& countries) {
    auto needle = detail::term_tokens(term);
    auto [year_min, year_max] = workspace_year_range(ws);
    auto docs = load_documents(ws);

    std::vector<TrendSeries> out;
    for (const auto& raw_country : countries) {
        std::string country = normalize_country(raw_country);
        std::map<int, std::int64_t> by_year;
        for (int y = year_min; y <= year_max; ++y) by_year[y] = 0;
        bool known = false;
        for (const auto& doc : docs) {
            if (doc.country != country) continue;
            known = true;
            by_year[doc.year] +=
                detail::count_token_sequence(detail::lower_tokens(doc.raw_text),
                                             needle);
        }
        if (!known) throw std::runtime_error("unknown country: " + raw_country);
        TrendSeries series;
        series.term = term;
        series.country = country;
        for (const auto& [year, count] : by_year)
            series.points.push_back({year, count});
        out.push_back(std::move(series));
    }
    return out;
}

} // namespace regulens
