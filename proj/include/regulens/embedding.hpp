#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "regulens/phase_segmenter.hpp"

namespace regulens {

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

struct TfidfStats {
    std::map<std::string, std::uint64_t> df; // chunks containing the token
    std::uint64_t n_chunks = 0;
};

inline TfidfStats fit_tfidf(const std::vector<Chunk>& chunks) {
    if (chunks.empty()) throw std::runtime_error("fit_tfidf: no chunks");
    TfidfStats stats;
    stats.n_chunks = chunks.size();
    std::map<std::string, bool> seen;
    for (const auto& c : chunks) {
        seen.clear();
        for (const auto& t : c.tokens) {
            if (!seen.count(t)) {
                seen[t] = true;
                ++stats.df[t];
            }
        }
    }
    return stats;
}

inline double idf(const TfidfStats& stats, const std::string& token) {
    auto it = stats.df.find(token);
    std::uint64_t df = it == stats.df.end() ? 0 : it->second;
    return std::log(static_cast<double>(1 + stats.n_chunks) /
                    static_cast<double>(1 + df)) +
           1.0;
}

// Hashed tf-idf embedding: each token's tf*idf lands at FNV-1a-64(token) mod
// dim, signed by hash bit 63 (+1 when clear), then L2-normalized. Tokens are
// accumulated in sorted order so the result depends only on the multiset.
inline std::vector<float> embed_tfidf(const std::vector<std::string>& tokens,
                                      const TfidfStats& stats, int dim,
                                      bool* zero_flag = nullptr) {
    if (dim <= 0) throw std::runtime_error("embedding dim must be positive");
    std::map<std::string, int> tf;
    for (const auto& t : tokens) ++tf[t];

    std::vector<double> acc(static_cast<std::size_t>(dim), 0.0);
    for (const auto& [token, count] : tf) {
        std::uint64_t h = fnv1a64(token);
        auto index = static_cast<std::size_t>(h % static_cast<std::uint64_t>(dim));
        double sign = (h >> 63) ? -1.0 : 1.0;
        acc[index] += sign * static_cast<double>(count) * idf(stats, token);
    }
    double norm_sq = 0.0;
    for (double v : acc) norm_sq += v * v;
    double norm = std::sqrt(norm_sq);
    if (zero_flag) *zero_flag = (norm == 0.0);
    std::vector<float> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i)
        out[i] = static_cast<float>(norm == 0.0 ? 0.0 : acc[i] / norm);
    return out;
}

template <typename A, typename B>
double cosine_similarity(const A& a, const B& b, bool* zero_flag = nullptr) {
    if (a.size() != b.size())
        throw std::runtime_error("cosine: dimension mismatch " +
                                 std::to_string(a.size()) + " vs " +
                                 std::to_string(b.size()));
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double x = static_cast<double>(a[i]);
        double y = static_cast<double>(b[i]);
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    if (zero_flag) *zero_flag = (na == 0.0 || nb == 0.0);
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

// Coordinate-wise mean, not re-normalized.
template <typename Vec>
std::vector<double> centroid(const std::vector<Vec>& vectors) {
    if (vectors.empty())
        throw std::runtime_error("centroid of empty vector set");
    std::size_t dim = vectors[0].size();
    std::vector<double> mean(dim, 0.0);
    for (const auto& v : vectors) {
        if (v.size() != dim)
            throw std::runtime_error("centroid: dimension mismatch");
        for (std::size_t i = 0; i < dim; ++i)
            mean[i] += static_cast<double>(v[i]);
    }
    for (double& m : mean) m /= static_cast<double>(vectors.size());
    return mean;
}

// Pluggable encoder: one vector per (id, token list) input.
struct EmbedBackend {
    virtual ~EmbedBackend() = default;
    virtual std::vector<std::vector<float>> embed(
        const std::vector<std::string>& ids,
        const std::vector<std::vector<std::string>>& token_lists) = 0;
};

struct TfidfBackend final : EmbedBackend {
    TfidfStats stats;
    int dim = 1024;

    TfidfBackend(TfidfStats s, int d) : stats(std::move(s)), dim(d) {}

    std::vector<std::vector<float>> embed(
        const std::vector<std::string>&,
        const std::vector<std::vector<std::string>>& token_lists) override {
        std::vector<std::vector<float>> out;
        out.reserve(token_lists.size());
        for (const auto& toks : token_lists)
            out.push_back(embed_tfidf(toks, stats, dim));
        return out;
    }
};

struct PrecomputedBackend final : EmbedBackend {
    std::map<std::string, std::vector<float>> by_id;

    std::vector<std::vector<float>> embed(
        const std::vector<std::string>& ids,
        const std::vector<std::vector<std::string>>&) override {
        std::vector<std::vector<float>> out;
        out.reserve(ids.size());
        for (const auto& id : ids) {
            auto it = by_id.find(id);
            if (it == by_id.end())
                throw std::runtime_error("no precomputed vector for chunk: " + id);
            out.push_back(it->second);
        }
        return out;
    }
};

} // namespace regulens
