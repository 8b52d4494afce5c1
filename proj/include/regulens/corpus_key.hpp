#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace regulens {

enum class Phase { Animal, Clinical, Testing, Other };

inline constexpr Phase all_phases[] = {Phase::Animal, Phase::Clinical,
                                       Phase::Testing, Phase::Other};

inline std::string phase_name(Phase p) {
    switch (p) {
        case Phase::Animal: return "Animal";
        case Phase::Clinical: return "Clinical";
        case Phase::Testing: return "Testing";
        case Phase::Other: return "Other";
    }
    return "Other";
}

inline Phase parse_phase(std::string_view s) {
    if (s == "Animal") return Phase::Animal;
    if (s == "Clinical") return Phase::Clinical;
    if (s == "Testing") return Phase::Testing;
    if (s == "Other") return Phase::Other;
    throw std::runtime_error("unknown phase: " + std::string(s));
}

// Uppercase, with the CH/CN spelling variation folded to CN.
inline std::string normalize_country(std::string_view raw) {
    std::string c;
    c.reserve(raw.size());
    for (char ch : raw) {
        if (ch >= 'a' && ch <= 'z') ch = static_cast<char>(ch - 32);
        c.push_back(ch);
    }
    if (c == "CH") c = "CN";
    return c;
}

// Label of one phase corpus: "Clinical_CN2011". year 0 is the year-aggregated
// form and serializes without digits ("Clinical_CN").
struct CorpusKey {
    Phase phase = Phase::Other;
    std::string country;
    int year = 0;

    std::string str() const {
        std::string s = phase_name(phase) + "_" + country;
        if (year != 0) s += std::to_string(year);
        return s;
    }

    static CorpusKey parse(std::string_view s) {
        auto underscore = s.find('_');
        if (underscore == std::string_view::npos)
            throw std::runtime_error("bad corpus key: " + std::string(s));
        CorpusKey k;
        k.phase = parse_phase(s.substr(0, underscore));
        std::string_view rest = s.substr(underscore + 1);
        std::size_t digits = rest.size();
        while (digits > 0 && rest[digits - 1] >= '0' && rest[digits - 1] <= '9')
            --digits;
        if (digits == 0)
            throw std::runtime_error("bad corpus key: " + std::string(s));
        k.country = normalize_country(rest.substr(0, digits));
        k.year = digits < rest.size()
                     ? std::stoi(std::string(rest.substr(digits)))
                     : 0;
        return k;
    }

    auto operator<=>(const CorpusKey&) const = default;
};

} // namespace regulens
