#pragma once

#include <string>
#include <unordered_set>
#include <vector>

namespace regulens {

// Built-in stopword list (175 entries) and sentence-abbreviation list.
// These mirror data/stopwords.txt and data/abbreviations.txt; the files are
// the override surface, the arrays below are the compiled-in defaults.
// Numerals are never stopwords: LAW and CARDINAL patterns depend on them.

inline const std::vector<std::string>& default_stopwords() {
    static const std::vector<std::string> words = {
    "a", "about", "above", "after", "again", "against", "all", "along",
    "also", "am", "among", "an", "and", "another", "any", "are", "aren't",
    "around", "as", "at", "be", "because", "been", "before", "being",
    "below", "between", "both", "but", "by", "can", "can't", "cannot",
    "could", "couldn't", "did", "didn't", "do", "does", "doesn't", "doing",
    "don't", "down", "during", "each", "ever", "every", "few", "for", "from",
    "further", "had", "hadn't", "has", "hasn't", "have", "haven't", "having",
    "he", "her", "here", "hers", "herself", "him", "himself", "his", "how",
    "i", "if", "in", "into", "is", "isn't", "it", "its", "itself", "just",
    "may", "me", "might", "more", "most", "must", "mustn't", "my", "myself",
    "never", "no", "nor", "not", "of", "off", "often", "on", "once", "one",
    "only", "onto", "or", "other", "others", "ought", "our", "ours",
    "ourselves", "out", "over", "own", "per", "rather", "same", "shall",
    "shan't", "she", "should", "shouldn't", "since", "so", "some", "still",
    "such", "than", "that", "the", "their", "theirs", "them", "themselves",
    "then", "there", "therefore", "these", "they", "this", "those",
    "through", "thus", "to", "too", "toward", "under", "until", "up", "upon",
    "very", "via", "was", "wasn't", "we", "were", "weren't", "what", "when",
    "whenever", "where", "whether", "which", "while", "who", "whom", "whose",
    "why", "will", "with", "within", "without", "won't", "would", "wouldn't",
    "yet", "you", "your", "yours", "yourself", "yourselves"
    };
    return words;
}

inline const std::unordered_set<std::string>& default_stopword_set() {
    static const std::unordered_set<std::string> set(
        default_stopwords().begin(), default_stopwords().end());
    return set;
}

inline const std::vector<std::string>& default_abbreviations() {
    static const std::vector<std::string> abbr = {
    "e.g.", "i.e.", "etc.", "cf.", "vs.", "No.", "Nos.", "Fig.", "Figs.",
    "Sec.", "Art.", "Ann.", "Ref.", "Dr.", "Mr.", "Ms.", "Prof.", "St.",
    "et al.", "approx."
    };
    return abbr;
}

} // namespace regulens
