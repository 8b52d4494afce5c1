#pragma once

#include <string>
#include <string_view>

namespace regulens {

// Porter stemming algorithm (1980), steps 1a through 5b, operating on
// lowercase ASCII words. Within each step the longest matching suffix is
// located first; if its condition fails no other rule in that step fires.
class PorterStemmer {
public:
    std::string stem(std::string_view word) const {
        std::string w(word);
        for (char c : w) {
            if (c < 'a' || c > 'z') return w; // only plain letter words
        }
        if (w.empty()) return w;
        step1a(w);
        step1b(w);
        step1c(w);
        step2(w);
        step3(w);
        step4(w);
        step5a(w);
        step5b(w);
        return w;
    }

private:
    static bool is_consonant(const std::string& w, std::size_t i) {
        char c = w[i];
        if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u')
            return false;
        if (c == 'y') return i == 0 ? true : !is_consonant(w, i - 1);
        return true;
    }

    // m of the prefix w[0..n): number of vowel-to-consonant transitions
    // in the [C](VC)^m[V] decomposition.
    static int measure(const std::string& w, std::size_t n) {
        int m = 0;
        bool in_vowel_run = false;
        for (std::size_t i = 0; i < n; ++i) {
            bool cons = is_consonant(w, i);
            if (!cons) {
                in_vowel_run = true;
            } else if (in_vowel_run) {
                ++m;
                in_vowel_run = false;
            }
        }
        return m;
    }

    static bool contains_vowel(const std::string& w, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i)
            if (!is_consonant(w, i)) return true;
        return false;
    }

    static bool double_consonant_at_end(const std::string& w) {
        std::size_t n = w.size();
        return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
    }

    // *o: prefix w[0..n) ends consonant-vowel-consonant, final not w/x/y.
    static bool cvc_at(const std::string& w, std::size_t n) {
        if (n < 3) return false;
        if (!is_consonant(w, n - 3) || is_consonant(w, n - 2) ||
            !is_consonant(w, n - 1))
            return false;
        char c = w[n - 1];
        return c != 'w' && c != 'x' && c != 'y';
    }

    static bool ends_with(const std::string& w, std::string_view suf) {
        return w.size() >= suf.size() &&
               std::string_view(w).substr(w.size() - suf.size()) == suf;
    }

    struct Rule {
        std::string_view suffix;
        std::string_view replacement;
        int min_measure; // condition m > min_measure on the stem; -1 = none
    };

    // Longest matching suffix wins; condition checked on the stem only for
    // that one rule. Returns true if a suffix matched (fired or not).
    static bool apply_table(std::string& w, const Rule* rules, int count) {
        const Rule* best = nullptr;
        for (int i = 0; i < count; ++i) {
            if (ends_with(w, rules[i].suffix)) {
                if (!best || rules[i].suffix.size() > best->suffix.size())
                    best = &rules[i];
            }
        }
        if (!best) return false;
        std::size_t stem_len = w.size() - best->suffix.size();
        if (best->min_measure < 0 || measure(w, stem_len) > best->min_measure) {
            w.resize(stem_len);
            w.append(best->replacement);
        }
        return true;
    }

    static void step1a(std::string& w) {
        if (ends_with(w, "sses")) w.resize(w.size() - 2);
        else if (ends_with(w, "ies")) w.resize(w.size() - 2);
        else if (ends_with(w, "ss")) {}
        else if (ends_with(w, "s")) w.resize(w.size() - 1);
    }

    static void step1b(std::string& w) {
        if (ends_with(w, "eed")) {
            if (measure(w, w.size() - 3) > 0) w.resize(w.size() - 1);
            return;
        }
        bool stripped = false;
        if (ends_with(w, "ed")) {
            if (contains_vowel(w, w.size() - 2)) {
                w.resize(w.size() - 2);
                stripped = true;
            }
        } else if (ends_with(w, "ing")) {
            if (contains_vowel(w, w.size() - 3)) {
                w.resize(w.size() - 3);
                stripped = true;
            }
        }
        if (!stripped) return;
        if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
            w.push_back('e');
        } else if (double_consonant_at_end(w)) {
            char c = w.back();
            if (c != 'l' && c != 's' && c != 'z') w.pop_back();
        } else if (measure(w, w.size()) == 1 && cvc_at(w, w.size())) {
            w.push_back('e');
        }
    }

    static void step1c(std::string& w) {
        if (ends_with(w, "y") && contains_vowel(w, w.size() - 1))
            w.back() = 'i';
    }

    static void step2(std::string& w) {
        static const Rule rules[] = {
            {"ational", "ate", 0}, {"tional", "tion", 0}, {"enci", "ence", 0},
            {"anci", "ance", 0},   {"izer", "ize", 0},    {"abli", "able", 0},
            {"alli", "al", 0},     {"entli", "ent", 0},   {"eli", "e", 0},
            {"ousli", "ous", 0},   {"ization", "ize", 0}, {"ation", "ate", 0},
            {"ator", "ate", 0},    {"alism", "al", 0},    {"iveness", "ive", 0},
            {"fulness", "ful", 0}, {"ousness", "ous", 0}, {"aliti", "al", 0},
            {"iviti", "ive", 0},   {"biliti", "ble", 0},
        };
        apply_table(w, rules, 20);
    }

    static void step3(std::string& w) {
        static const Rule rules[] = {
            {"icate", "ic", 0}, {"ative", "", 0}, {"alize", "al", 0},
            {"iciti", "ic", 0}, {"ical", "ic", 0}, {"ful", "", 0},
            {"ness", "", 0},
        };
        apply_table(w, rules, 7);
    }

    static void step4(std::string& w) {
        static const Rule rules[] = {
            {"al", "", 1},    {"ance", "", 1}, {"ence", "", 1}, {"er", "", 1},
            {"ic", "", 1},    {"able", "", 1}, {"ible", "", 1}, {"ant", "", 1},
            {"ement", "", 1}, {"ment", "", 1}, {"ent", "", 1},  {"ion", "", 1},
            {"ou", "", 1},    {"ism", "", 1},  {"ate", "", 1},  {"iti", "", 1},
            {"ous", "", 1},   {"ive", "", 1},  {"ize", "", 1},
        };
        // "ion" additionally requires the stem to end in s or t; handled
        // here because apply_table only knows the measure condition.
        const Rule* best = nullptr;
        for (const Rule& r : rules) {
            if (ends_with(w, r.suffix) &&
                (!best || r.suffix.size() > best->suffix.size()))
                best = &r;
        }
        if (!best) return;
        std::size_t stem_len = w.size() - best->suffix.size();
        if (measure(w, stem_len) <= 1) return;
        if (best->suffix == "ion") {
            if (stem_len == 0) return;
            char c = w[stem_len - 1];
            if (c != 's' && c != 't') return;
        }
        w.resize(stem_len);
    }

    static void step5a(std::string& w) {
        if (!ends_with(w, "e")) return;
        std::size_t stem_len = w.size() - 1;
        int m = measure(w, stem_len);
        if (m > 1 || (m == 1 && !cvc_at(w, stem_len))) w.pop_back();
    }

    static void step5b(std::string& w) {
        if (w.size() >= 2 && w.back() == 'l' && double_consonant_at_end(w) &&
            measure(w, w.size()) > 1)
            w.pop_back();
    }
};

inline std::string porter_stem(std::string_view word) {
    static const PorterStemmer stemmer;
    return stemmer.stem(word);
}

} // namespace regulens
