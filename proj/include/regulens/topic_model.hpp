#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "regulens/corpus_store.hpp"
#include "regulens/errors.hpp"
#include "regulens/rng.hpp"
#include "regulens/textproc.hpp"

namespace regulens {

struct LdaConfig {
    int K = 0; // 0 = choose from k_grid
    std::vector<int> k_grid = {5, 10, 15, 20};
    double alpha = 0.0; // 0 = default 50/K
    double beta = 0.01;
    int iterations = 500;
    int burn_in = 100;
    std::uint64_t seed = 0;
};

struct TopicModel {
    int K = 0;
    LdaConfig config; // as resolved for this fit (K and alpha filled in)
    std::map<std::string, int> vocabulary;
    std::vector<std::string> tokens_by_index;
    std::vector<std::vector<int>> n_kw; // K x V topic-word counts
    std::vector<std::vector<int>> n_dk; // D x K document-topic counts
    std::vector<int> n_k;               // per-topic totals
    std::vector<std::vector<std::string>> top_words; // ranked, up to 20
    std::vector<double> coherence;                   // per topic, optional
};

using TokenStream = std::vector<std::string>;

// Observer invoked after every completed Gibbs sweep; lets callers audit the
// count tables mid-fit without copying them around.
using SweepObserver = std::function<void(
    int sweep, const std::vector<std::vector<int>>& n_kw,
    const std::vector<std::vector<int>>& n_dk, const std::vector<int>& n_k)>;

namespace detail {

inline void validate_lda_config(const LdaConfig& c) {
    if (c.K < 2) throw config_error("lda: K must be at least 2");
    if (c.alpha <= 0.0) throw config_error("lda: alpha must be positive");
    if (c.beta <= 0.0) throw config_error("lda: beta must be positive");
    if (c.iterations <= c.burn_in)
        throw config_error("lda: iterations must exceed burn-in");
}

// Vocabulary indices ranked by count descending, token ascending; zero-count
// tokens participate, so sparse topics are padded alphabetically rather than
// truncated.
inline std::vector<int> ranked_words(const TopicModel& m, int topic,
                                     std::size_t limit) {
    std::vector<int> idx(m.tokens_by_index.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    const auto& counts = m.n_kw[static_cast<std::size_t>(topic)];
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (counts[static_cast<std::size_t>(a)] !=
            counts[static_cast<std::size_t>(b)])
            return counts[static_cast<std::size_t>(a)] >
                   counts[static_cast<std::size_t>(b)];
        return m.tokens_by_index[static_cast<std::size_t>(a)] <
               m.tokens_by_index[static_cast<std::size_t>(b)];
    });
    if (idx.size() > limit) idx.resize(limit);
    return idx;
}

} // namespace detail

// Collapsed Gibbs sampling. Counts are taken from the final sweep (no
// averaging), so a fixed seed yields bit-identical tables.
inline TopicModel fit_lda(const std::vector<TokenStream>& docs, LdaConfig config,
                          const SweepObserver& observer = {}) {
    if (config.K == 0 && config.k_grid.size() == 1) config.K = config.k_grid[0];
    if (config.K == 0)
        throw config_error("lda: K unset; pick one or run the grid search");
    if (config.alpha == 0.0) config.alpha = 50.0 / config.K;
    detail::validate_lda_config(config);
    if (docs.size() < 2)
        throw std::runtime_error("lda: need at least 2 documents");

    TopicModel m;
    m.K = config.K;
    m.config = config;
    for (const auto& doc : docs)
        for (const auto& tok : doc) m.vocabulary.emplace(tok, 0);
    if (m.vocabulary.empty()) throw std::runtime_error("lda: empty vocabulary");
    int v = 0;
    for (auto& [tok, index] : m.vocabulary) {
        index = v++;
        m.tokens_by_index.push_back(tok);
    }
    std::size_t vocab_size = m.tokens_by_index.size();
    if (static_cast<std::size_t>(config.K) > vocab_size)
        throw std::runtime_error("lda: K " + std::to_string(config.K) +
                                 " exceeds vocabulary size " +
                                 std::to_string(vocab_size));

    std::size_t k_count = static_cast<std::size_t>(config.K);
    std::vector<std::vector<int>> words(docs.size());
    for (std::size_t d = 0; d < docs.size(); ++d) {
        words[d].reserve(docs[d].size());
        for (const auto& tok : docs[d])
            words[d].push_back(m.vocabulary.at(tok));
    }

    m.n_kw.assign(k_count, std::vector<int>(vocab_size, 0));
    m.n_dk.assign(docs.size(), std::vector<int>(k_count, 0));
    m.n_k.assign(k_count, 0);
    std::vector<std::vector<int>> z(docs.size());

    SplitMix64 rng(config.seed);
    for (std::size_t d = 0; d < docs.size(); ++d) {
        z[d].resize(words[d].size());
        for (std::size_t i = 0; i < words[d].size(); ++i) {
            int k = static_cast<int>(rng.next_below(k_count));
            z[d][i] = k;
            ++m.n_kw[static_cast<std::size_t>(k)]
                    [static_cast<std::size_t>(words[d][i])];
            ++m.n_dk[d][static_cast<std::size_t>(k)];
            ++m.n_k[static_cast<std::size_t>(k)];
        }
    }

    double v_beta = static_cast<double>(vocab_size) * config.beta;
    std::vector<double> weight(k_count);
    for (int sweep = 0; sweep < config.iterations; ++sweep) {
        for (std::size_t d = 0; d < docs.size(); ++d) {
            auto& doc_topics = m.n_dk[d];
            for (std::size_t i = 0; i < words[d].size(); ++i) {
                std::size_t w = static_cast<std::size_t>(words[d][i]);
                std::size_t old_k = static_cast<std::size_t>(z[d][i]);
                --m.n_kw[old_k][w];
                --doc_topics[old_k];
                --m.n_k[old_k];

                double total = 0.0;
                for (std::size_t k = 0; k < k_count; ++k) {
                    total += (doc_topics[k] + config.alpha) *
                             (m.n_kw[k][w] + config.beta) /
                             (m.n_k[k] + v_beta);
                    weight[k] = total;
                }
                double u = rng.next_double() * total;
                std::size_t new_k = k_count - 1;
                for (std::size_t k = 0; k < k_count; ++k) {
                    if (u < weight[k]) {
                        new_k = k;
                        break;
                    }
                }
                z[d][i] = static_cast<int>(new_k);
                ++m.n_kw[new_k][w];
                ++doc_topics[new_k];
                ++m.n_k[new_k];
            }
        }
        if (observer) observer(sweep, m.n_kw, m.n_dk, m.n_k);
    }

    for (int k = 0; k < config.K; ++k) {
        auto ranked = detail::ranked_words(m, k, std::min<std::size_t>(20, vocab_size));
        std::vector<std::string> names;
        names.reserve(ranked.size());
        for (int idx : ranked)
            names.push_back(m.tokens_by_index[static_cast<std::size_t>(idx)]);
        m.top_words.push_back(std::move(names));
    }
    return m;
}

// UMass coherence per topic over the fitting corpus: for top words w_1..w_N
// (count-descending), sum ln((D(w_i,w_j)+1)/D(w_j)) over all j<i, where D
// counts documents containing the word(s). Pairs with D(w_j)=0 are skipped.
inline std::vector<double> umass_coherence(
    const TopicModel& m, const std::vector<TokenStream>& docs,
    std::size_t top_n = 10, std::vector<std::string>* warnings = nullptr) {
    std::size_t vocab_size = m.tokens_by_index.size();
    if (top_n > vocab_size) {
        if (warnings)
            warnings->push_back("coherence: top_n " + std::to_string(top_n) +
                                " clamped to vocabulary size " +
                                std::to_string(vocab_size));
        top_n = vocab_size;
    }

    std::vector<std::unordered_set<int>> doc_sets;
    doc_sets.reserve(docs.size());
    for (const auto& doc : docs) {
        std::unordered_set<int> set;
        for (const auto& tok : doc) {
            auto it = m.vocabulary.find(tok);
            if (it != m.vocabulary.end()) set.insert(it->second);
        }
        doc_sets.push_back(std::move(set));
    }
    auto doc_freq = [&](int w) {
        int n = 0;
        for (const auto& set : doc_sets) n += set.count(w) ? 1 : 0;
        return n;
    };
    auto co_freq = [&](int a, int b) {
        int n = 0;
        for (const auto& set : doc_sets) n += set.count(a) && set.count(b) ? 1 : 0;
        return n;
    };

    std::vector<double> scores;
    scores.reserve(static_cast<std::size_t>(m.K));
    for (int k = 0; k < m.K; ++k) {
        auto top = detail::ranked_words(m, k, top_n);
        double c = 0.0;
        for (std::size_t i = 1; i < top.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                int dj = doc_freq(top[j]);
                if (dj == 0) {
                    if (warnings)
                        warnings->push_back(
                            "coherence: topic " + std::to_string(k) +
                            " word \"" +
                            m.tokens_by_index[static_cast<std::size_t>(top[j])] +
                            "\" appears in no document; pair skipped");
                    continue;
                }
                c += std::log((co_freq(top[i], top[j]) + 1.0) / dj);
            }
        }
        scores.push_back(c);
    }
    return scores;
}

struct KSelection {
    int best_k = 0;
    std::vector<std::pair<int, double>> grid_scores; // (K, mean coherence)
};

// One fit per grid entry (seed offset by grid position), scored by mean
// per-topic coherence; ties go to the smaller K.
inline KSelection select_k(const std::vector<TokenStream>& docs,
                           const LdaConfig& config, std::size_t top_n = 10,
                           std::vector<std::string>* warnings = nullptr) {
    if (config.k_grid.empty()) throw config_error("lda: empty K grid");
    KSelection sel;
    bool have_best = false;
    double best_score = 0.0;
    for (std::size_t g = 0; g < config.k_grid.size(); ++g) {
        LdaConfig c = config; // alpha 0 keeps the per-K default 50/K
        c.K = config.k_grid[g];
        c.seed = config.seed + g;
        auto model = fit_lda(docs, c);
        auto scores = umass_coherence(model, docs, top_n, warnings);
        double mean = 0.0;
        for (double s : scores) mean += s;
        mean /= static_cast<double>(scores.size());
        sel.grid_scores.emplace_back(c.K, mean);
        if (!have_best || mean > best_score ||
            (mean == best_score && c.K < sel.best_k)) {
            have_best = true;
            best_score = mean;
            sel.best_k = c.K;
        }
    }
    return sel;
}

// Held-out log-likelihood from smoothed point estimates: phi is frozen from
// the counts; theta is folded in per document by fixed-point iteration.
inline double heldout_loglik(const TopicModel& m,
                             const std::vector<TokenStream>& docs,
                             int fold_iterations = 50) {
    std::size_t k_count = static_cast<std::size_t>(m.K);
    std::size_t vocab_size = m.tokens_by_index.size();
    double v_beta = static_cast<double>(vocab_size) * m.config.beta;
    std::vector<std::vector<double>> phi(k_count,
                                         std::vector<double>(vocab_size));
    for (std::size_t k = 0; k < k_count; ++k)
        for (std::size_t w = 0; w < vocab_size; ++w)
            phi[k][w] = (m.n_kw[k][w] + m.config.beta) / (m.n_k[k] + v_beta);

    double loglik = 0.0;
    std::vector<double> theta(k_count), acc(k_count), gamma(k_count);
    for (const auto& doc : docs) {
        std::vector<int> words;
        for (const auto& tok : doc) {
            auto it = m.vocabulary.find(tok);
            if (it != m.vocabulary.end()) words.push_back(it->second);
        }
        if (words.empty()) continue;
        std::fill(theta.begin(), theta.end(), 1.0 / static_cast<double>(k_count));
        for (int iter = 0; iter < fold_iterations; ++iter) {
            std::fill(acc.begin(), acc.end(), 0.0);
            for (int w : words) {
                double norm = 0.0;
                for (std::size_t k = 0; k < k_count; ++k) {
                    gamma[k] = theta[k] * phi[k][static_cast<std::size_t>(w)];
                    norm += gamma[k];
                }
                for (std::size_t k = 0; k < k_count; ++k)
                    acc[k] += gamma[k] / norm;
            }
            double denom = static_cast<double>(words.size()) +
                           static_cast<double>(k_count) * m.config.alpha;
            for (std::size_t k = 0; k < k_count; ++k)
                theta[k] = (acc[k] + m.config.alpha) / denom;
        }
        for (int w : words) {
            double p = 0.0;
            for (std::size_t k = 0; k < k_count; ++k)
                p += theta[k] * phi[k][static_cast<std::size_t>(w)];
            loglik += std::log(p);
        }
    }
    return loglik;
}

// JSON dump: config, vocabulary, per-topic top-20 words with counts, and
// coherence when present.
inline nlohmann::json model_json(const TopicModel& m) {
    nlohmann::json j;
    j["config"] = {{"K", m.config.K},           {"alpha", m.config.alpha},
                   {"beta", m.config.beta},     {"iterations", m.config.iterations},
                   {"burn_in", m.config.burn_in}, {"seed", m.config.seed}};
    j["vocabulary"] = m.vocabulary;
    nlohmann::json topics = nlohmann::json::array();
    for (int k = 0; k < m.K; ++k) {
        nlohmann::json words = nlohmann::json::array();
        for (const auto& tok : m.top_words[static_cast<std::size_t>(k)]) {
            int idx = m.vocabulary.at(tok);
            words.push_back({{"word", tok},
                             {"count", m.n_kw[static_cast<std::size_t>(k)]
                                            [static_cast<std::size_t>(idx)]}});
        }
        nlohmann::json topic = {{"topic", k}, {"top_words", words}};
        if (static_cast<std::size_t>(k) < m.coherence.size())
            topic["coherence"] = m.coherence[static_cast<std::size_t>(k)];
        topics.push_back(topic);
    }
    j["topics"] = topics;
    return j;
}

struct HeatmapCell {
    int year = 0;
    std::string term;
    std::int64_t count = 0;
};

// Per-year counts of stem-normalized terms over one country's documents,
// dense across the workspace year range so chart axes have no holes. Rows
// are ordered (year, term).
inline std::vector<HeatmapCell> term_heatmap(const Workspace& ws,
                                             const std::string& country,
                                             const std::vector<std::string>& terms) {
    std::string wanted = normalize_country(country);
    auto docs = load_documents(ws);
    std::map<int, std::map<std::string, std::int64_t>> by_year;
    bool found = false;
    for (const auto& doc : docs) {
        if (doc.country != wanted) continue;
        found = true;
        auto& counts = by_year[doc.year];
        for (const auto& tok : normalize_text(doc.raw_text)) ++counts[tok];
    }
    if (!found) throw std::runtime_error("unknown country: " + country);

    std::vector<std::string> stems;
    for (const auto& term : terms) {
        auto norm = normalize_text(term);
        stems.push_back(norm.empty() ? to_lower(term) : norm[0]);
    }
    std::sort(stems.begin(), stems.end());
    stems.erase(std::unique(stems.begin(), stems.end()), stems.end());

    auto [year_lo, year_hi] = workspace_year_range(ws);
    std::vector<HeatmapCell> cells;
    for (int year = year_lo; year <= year_hi; ++year) {
        auto it = by_year.find(year);
        for (const auto& stem : stems) {
            std::int64_t n = 0;
            if (it != by_year.end()) {
                auto hit = it->second.find(stem);
                if (hit != it->second.end()) n = hit->second;
            }
            cells.push_back({year, stem, n});
        }
    }
    return cells;
}

// Top-terms mode: the country's most frequent stems overall (count
// descending, term ascending), then the same dense table.
inline std::vector<HeatmapCell> term_heatmap_top(const Workspace& ws,
                                                 const std::string& country,
                                                 int top_m = 15) {
    if (top_m <= 0) throw config_error("heatmap: top_m must be positive");
    std::string wanted = normalize_country(country);
    auto docs = load_documents(ws);
    std::map<std::string, std::int64_t> totals;
    bool found = false;
    for (const auto& doc : docs) {
        if (doc.country != wanted) continue;
        found = true;
        for (const auto& tok : normalize_text(doc.raw_text)) ++totals[tok];
    }
    if (!found) throw std::runtime_error("unknown country: " + country);

    std::vector<std::pair<std::string, std::int64_t>> ranked(totals.begin(),
                                                             totals.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ranked.size() > static_cast<std::size_t>(top_m))
        ranked.resize(static_cast<std::size_t>(top_m));
    std::vector<std::string> terms;
    for (const auto& [term, count] : ranked) terms.push_back(term);
    return term_heatmap(ws, country, terms);
}

} // namespace regulens
