#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "regulens/corpus_key.hpp"
#include "regulens/corpus_store.hpp"
#include "regulens/errors.hpp"
#include "regulens/textproc.hpp"

namespace regulens {

struct PhaseKeywordConfig {
    std::map<Phase, std::vector<std::string>> keywords;
};

inline PhaseKeywordConfig default_phase_keywords() {
    PhaseKeywordConfig c;
    c.keywords[Phase::Animal] = {
        "animal testing", "animal models", "animal toxicity tests",
        "animal ethics", "animal",
    };
    c.keywords[Phase::Clinical] = {
        "clinical", "clinical research", "patients", "clinical evaluation",
        "randomized controlled trial", "safety assessment", "efficacy",
        "pharmacodynamics", "side effects", "subjects", "human trials",
    };
    c.keywords[Phase::Testing] = {
        "testing methods", "quality control", "analytical methods",
        "laboratory testing", "test standards", "testing equipment",
        "calibration", "sample collection", "data analysis",
        "instrument validation", "standard operating procedures", "testing",
    };
    return c;
}

namespace detail {

// Lowercase with punctuation collapsed to spaces: the light normalization
// keyword phrases are matched against.
inline std::vector<std::string> match_words(std::string_view text) {
    std::string flat;
    flat.reserve(text.size());
    for (char ch : text) {
        unsigned char c = static_cast<unsigned char>(ch);
        if (c >= 'A' && c <= 'Z') flat.push_back(static_cast<char>(c + 32));
        else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))
            flat.push_back(ch);
        else flat.push_back(' ');
    }
    std::vector<std::string> words;
    std::size_t i = 0;
    while (i < flat.size()) {
        while (i < flat.size() && flat[i] == ' ') ++i;
        std::size_t start = i;
        while (i < flat.size() && flat[i] != ' ') ++i;
        if (i > start) words.push_back(flat.substr(start, i - start));
    }
    return words;
}

} // namespace detail

// Whole-phrase keyword matching with longest-match consumption: at each word
// position the longest matching phrase (across all phase lists) claims its
// span; consumed words cannot trigger another phase (so "animal testing"
// never also counts as "testing"). No match at all -> {Other}.
inline std::set<Phase> classify_sentence(std::string_view sentence_text,
                                         const PhaseKeywordConfig& config =
                                             default_phase_keywords()) {
    struct Entry {
        std::vector<std::string> words;
        Phase phase;
    };
    std::vector<Entry> entries;
    for (const auto& [phase, phrases] : config.keywords)
        for (const auto& p : phrases) {
            auto w = detail::match_words(p);
            if (!w.empty()) entries.push_back({std::move(w), phase});
        }

    auto words = detail::match_words(sentence_text);
    std::set<Phase> phases;
    std::size_t i = 0;
    while (i < words.size()) {
        std::size_t best_len = 0;
        std::set<Phase> best_phases;
        for (const auto& e : entries) {
            if (e.words.size() < best_len || i + e.words.size() > words.size())
                continue;
            if (!std::equal(e.words.begin(), e.words.end(), words.begin() + i))
                continue;
            if (e.words.size() > best_len) {
                best_len = e.words.size();
                best_phases = {e.phase};
            } else {
                best_phases.insert(e.phase);
            }
        }
        if (best_len == 0) {
            ++i;
        } else {
            phases.insert(best_phases.begin(), best_phases.end());
            i += best_len;
        }
    }
    if (phases.empty()) phases.insert(Phase::Other);
    return phases;
}

struct SegmentOptions {
    PhaseKeywordConfig phase_keywords = default_phase_keywords();
    std::vector<std::string> abbreviations = default_abbreviations();
    NormalizeOptions normalize;
    int boilerplate_repeats = 3;
    int chunk_size = 256;
};

// Every sentence of every document, grouped under (phase, country, year).
inline std::map<CorpusKey, std::vector<Sentence>> build_phase_corpora(
    const Workspace& ws, const SegmentOptions& opts = {}) {
    std::map<CorpusKey, std::vector<Sentence>> corpora;
    for (const auto& doc : load_documents(ws)) {
        std::string cleaned =
            strip_boilerplate_text(doc.raw_text, opts.boilerplate_repeats);
        auto sentences =
            segment_sentences(cleaned, doc.doc_id, opts.abbreviations);
        for (const auto& s : sentences) {
            for (Phase p : classify_sentence(s.text, opts.phase_keywords))
                corpora[{p, doc.country, doc.year}].push_back(s);
        }
    }
    return corpora;
}

struct Chunk {
    std::string chunk_id; // "<doc_id>#<ordinal>"
    CorpusKey key;
    std::string doc_id;
    int first_sentence = 0;
    int last_sentence = 0;
    std::vector<std::string> tokens;
};

// Greedy sentence packing into <= chunk_size normalized tokens. Sentences
// are never split across chunks (an oversize sentence is truncated into its
// own chunk) and chunks never span documents. `ordinals` carries per-document
// chunk counters so ids stay unique when a document feeds several corpora.
inline std::vector<Chunk> chunk_corpus(const std::vector<Sentence>& sentences,
                                       int chunk_size, const CorpusKey& key,
                                       const NormalizeOptions& norm = {},
                                       std::map<std::string, int>* ordinals =
                                           nullptr) {
    if (chunk_size < 16)
        throw config_error("chunk_size must be at least 16, got " +
                           std::to_string(chunk_size));
    std::map<std::string, int> local;
    if (!ordinals) ordinals = &local;

    std::vector<Chunk> chunks;
    Chunk current;
    auto flush = [&] {
        if (current.tokens.empty()) return;
        int ordinal = (*ordinals)[current.doc_id]++;
        current.chunk_id = current.doc_id + "#" + std::to_string(ordinal);
        current.key = key;
        chunks.push_back(std::move(current));
        current = {};
    };
    for (const auto& s : sentences) {
        auto toks = normalize(tokenize(s.text), norm);
        if (toks.empty()) continue;
        if (toks.size() > static_cast<std::size_t>(chunk_size))
            toks.resize(static_cast<std::size_t>(chunk_size));
        bool doc_change = !current.tokens.empty() && current.doc_id != s.doc_id;
        bool overflow =
            current.tokens.size() + toks.size() >
            static_cast<std::size_t>(chunk_size);
        if (doc_change || overflow) flush();
        if (current.tokens.empty()) {
            current.doc_id = s.doc_id;
            current.first_sentence = s.index;
        }
        current.last_sentence = s.index;
        current.tokens.insert(current.tokens.end(), toks.begin(), toks.end());
    }
    flush();
    return chunks;
}

struct SegmentResult {
    std::vector<Chunk> chunks;
    std::map<CorpusKey, std::size_t> sentence_counts;
};

// Segment the whole workspace and persist <ws>/chunks.jsonl.
inline SegmentResult segment_workspace(const Workspace& ws,
                                       const SegmentOptions& opts = {}) {
    auto corpora = build_phase_corpora(ws, opts);
    SegmentResult result;
    std::map<std::string, int> ordinals;
    for (const auto& [key, sentences] : corpora) {
        result.sentence_counts[key] = sentences.size();
        auto chunks = chunk_corpus(sentences, opts.chunk_size, key,
                                   opts.normalize, &ordinals);
        result.chunks.insert(result.chunks.end(),
                             std::make_move_iterator(chunks.begin()),
                             std::make_move_iterator(chunks.end()));
    }

    std::string jsonl;
    for (const auto& c : result.chunks) {
        nlohmann::json rec = {{"chunk_id", c.chunk_id},
                              {"key", c.key.str()},
                              {"doc_id", c.doc_id},
                              {"first_sentence", c.first_sentence},
                              {"last_sentence", c.last_sentence},
                              {"tokens", c.tokens}};
        jsonl += rec.dump();
        jsonl += '\n';
    }
    detail::write_file(ws.chunks_path(), jsonl);
    return result;
}

inline std::vector<Chunk> load_chunks(const Workspace& ws) {
    std::string content = detail::read_file(ws.chunks_path());
    std::vector<Chunk> chunks;
    for (const auto& line : split_lines(content)) {
        if (trim(line).empty()) continue;
        nlohmann::json rec = nlohmann::json::parse(line);
        Chunk c;
        c.chunk_id = rec.at("chunk_id").get<std::string>();
        c.key = CorpusKey::parse(rec.at("key").get<std::string>());
        c.doc_id = rec.at("doc_id").get<std::string>();
        c.first_sentence = rec.at("first_sentence").get<int>();
        c.last_sentence = rec.at("last_sentence").get<int>();
        c.tokens = rec.at("tokens").get<std::vector<std::string>>();
        chunks.push_back(std::move(c));
    }
    return chunks;
}

} // namespace regulens
