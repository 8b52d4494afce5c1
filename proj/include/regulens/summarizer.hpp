#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "regulens/embedding.hpp"
#include "regulens/errors.hpp"
#include "regulens/textproc.hpp"

namespace regulens {

struct SummaryConfig {
    int k_sentences = 5;
    double lambda = 0.7; // relevance vs diversity
    int min_sentence_tokens = 5;
};

struct ScoredSentence {
    Sentence sentence;
    std::vector<std::string> tokens; // normalized
    std::vector<float> embedding;
    double score = 0.0; // cosine to the corpus centroid
};

namespace detail {

inline void validate_summary_config(const SummaryConfig& cfg) {
    if (cfg.k_sentences < 1)
        throw config_error("summary: k_sentences must be at least 1");
    if (!(cfg.lambda >= 0.0 && cfg.lambda <= 1.0))
        throw config_error("summary: lambda must be in [0,1]");
    if (cfg.min_sentence_tokens < 0)
        throw config_error("summary: min_sentence_tokens must be non-negative");
}

} // namespace detail

// Embeds every sentence with at least min_tokens normalized tokens and
// scores it by cosine to the corpus centroid. Input order is preserved.
inline std::vector<ScoredSentence> score_sentences(
    const std::vector<Sentence>& sentences, EmbedBackend& backend,
    int min_tokens = 5) {
    std::vector<ScoredSentence> scored;
    std::vector<std::string> ids;
    std::vector<std::vector<std::string>> token_lists;
    for (const auto& s : sentences) {
        auto tokens = normalize_text(s.text);
        if (static_cast<int>(tokens.size()) < min_tokens) continue;
        ScoredSentence item;
        item.sentence = s;
        item.tokens = tokens;
        ids.push_back(s.doc_id + "#" + std::to_string(s.index));
        token_lists.push_back(std::move(tokens));
        scored.push_back(std::move(item));
    }
    if (scored.empty())
        throw std::runtime_error("summary: no eligible sentences");

    auto vectors = backend.embed(ids, token_lists);
    auto mean = centroid(vectors);
    for (std::size_t i = 0; i < scored.size(); ++i) {
        scored[i].embedding = std::move(vectors[i]);
        scored[i].score = cosine_similarity(scored[i].embedding, mean);
    }
    return scored;
}

// Greedy maximal-marginal-relevance selection: repeatedly take the unselected
// sentence maximizing lambda*score - (1-lambda)*max cosine to the already
// selected, ties to the earlier position. Output follows document order.
inline std::vector<ScoredSentence> summarize_mmr(
    const std::vector<ScoredSentence>& scored, const SummaryConfig& cfg = {}) {
    detail::validate_summary_config(cfg);
    std::vector<std::size_t> selected;
    std::vector<bool> used(scored.size(), false);

    while (selected.size() <
           std::min<std::size_t>(scored.size(),
                                 static_cast<std::size_t>(cfg.k_sentences))) {
        double best = 0.0;
        std::size_t best_i = scored.size();
        for (std::size_t i = 0; i < scored.size(); ++i) {
            if (used[i]) continue;
            double redundancy = 0.0;
            for (std::size_t j : selected)
                redundancy = std::max(
                    redundancy, cosine_similarity(scored[i].embedding,
                                                  scored[j].embedding));
            double value =
                cfg.lambda * scored[i].score - (1.0 - cfg.lambda) * redundancy;
            if (best_i == scored.size() || value > best) {
                best = value;
                best_i = i;
            }
        }
        used[best_i] = true;
        selected.push_back(best_i);
    }

    std::sort(selected.begin(), selected.end());
    std::vector<ScoredSentence> out;
    out.reserve(selected.size());
    for (std::size_t i : selected) out.push_back(scored[i]);
    return out;
}

inline std::vector<ScoredSentence> summarize_corpus(
    const std::vector<Sentence>& sentences, EmbedBackend& backend,
    const SummaryConfig& cfg = {}) {
    detail::validate_summary_config(cfg);
    return summarize_mmr(score_sentences(sentences, backend, cfg.min_sentence_tokens),
                         cfg);
}

inline nlohmann::json summary_json(const std::string& corpus_key,
                                   const std::vector<ScoredSentence>& summary,
                                   const SummaryConfig& cfg) {
    nlohmann::json sentences = nlohmann::json::array();
    for (const auto& s : summary)
        sentences.push_back({{"doc_id", s.sentence.doc_id},
                             {"sentence_index", s.sentence.index},
                             {"text", s.sentence.text},
                             {"score", s.score}});
    return {{"corpus_key", corpus_key},
            {"sentences", sentences},
            {"config",
             {{"k_sentences", cfg.k_sentences},
              {"lambda", cfg.lambda},
              {"min_sentence_tokens", cfg.min_sentence_tokens}}}};
}

} // namespace regulens
