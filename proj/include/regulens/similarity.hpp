#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "regulens/corpus_key.hpp"
#include "regulens/embedding.hpp"
#include "regulens/rng.hpp"

namespace regulens {

struct SimilarityReport {
    CorpusKey key_a;
    CorpusKey key_b;
    std::uint64_t n_pairs = 0;
    double mean_similarity = 0.0;
    double std_similarity = 0.0;
    double mean_distance = 0.0; // always exactly 1 - mean_similarity
    double std_distance = 0.0;  // equals std_similarity
    bool closest_in_group = false;
};

struct PairwiseOptions {
    std::uint64_t max_pairs = 1'000'000;
    std::uint64_t seed = 0;
};

namespace detail {

// Fixed-shape pairwise summation: the result depends only on element order,
// never on accumulation strategy or thread count.
inline double tree_sum(std::vector<double> v) {
    if (v.empty()) return 0.0;
    while (v.size() > 1) {
        std::size_t half = (v.size() + 1) / 2;
        for (std::size_t i = 0; i < half; ++i) {
            std::size_t a = 2 * i, b = 2 * i + 1;
            v[i] = b < v.size() ? v[a] + v[b] : v[a];
        }
        v.resize(half);
    }
    return v[0];
}

} // namespace detail

// Cross-pair cosine statistics over all |A|x|B| pairs, uniformly subsampled
// down to max_pairs when the full cross product is larger. Inputs are
// canonically ordered by key first, so (A,B) and (B,A) produce identical
// numbers bit for bit.
inline SimilarityReport pairwise_stats(
    const CorpusKey& key_a, const std::vector<std::vector<float>>& vecs_a,
    const CorpusKey& key_b, const std::vector<std::vector<float>>& vecs_b,
    const PairwiseOptions& opts = {}) {
    if (vecs_a.empty())
        throw std::runtime_error("empty corpus: " + key_a.str());
    if (vecs_b.empty())
        throw std::runtime_error("empty corpus: " + key_b.str());

    const auto* first = &vecs_a;
    const auto* second = &vecs_b;
    std::string name_a = key_a.str(), name_b = key_b.str();
    if (name_b < name_a) {
        std::swap(first, second);
        std::swap(name_a, name_b);
    }

    std::uint64_t rows = first->size(), cols = second->size();
    std::uint64_t total = rows * cols;
    std::vector<double> sims;
    if (total <= opts.max_pairs) {
        sims.reserve(total);
        for (std::uint64_t i = 0; i < rows; ++i)
            for (std::uint64_t j = 0; j < cols; ++j)
                sims.push_back(cosine_similarity((*first)[i], (*second)[j]));
    } else {
        SplitMix64 rng(opts.seed ^ fnv1a64(name_a + "|" + name_b));
        std::unordered_set<std::uint64_t> picked;
        picked.reserve(opts.max_pairs * 2);
        while (picked.size() < opts.max_pairs)
            picked.insert(rng.next_below(total));
        std::vector<std::uint64_t> indices(picked.begin(), picked.end());
        std::sort(indices.begin(), indices.end());
        sims.reserve(indices.size());
        for (std::uint64_t idx : indices)
            sims.push_back(
                cosine_similarity((*first)[idx / cols], (*second)[idx % cols]));
    }

    SimilarityReport r;
    r.key_a = key_a;
    r.key_b = key_b;
    r.n_pairs = sims.size();
    double n = static_cast<double>(sims.size());
    r.mean_similarity = detail::tree_sum(sims) / n;
    std::vector<double> sq(sims.size());
    for (std::size_t i = 0; i < sims.size(); ++i) {
        double d = sims[i] - r.mean_similarity;
        sq[i] = d * d;
    }
    r.std_similarity = std::sqrt(detail::tree_sum(std::move(sq)) / n);
    r.mean_distance = 1.0 - r.mean_similarity;
    r.std_distance = r.std_similarity;
    return r;
}

// Flag, within each phase, the pair with maximum mean similarity (minimum
// mean distance); ties break lexicographically on (key_a, key_b). Reports
// whose two keys disagree on phase belong to no group.
inline void closest_pairs(std::vector<SimilarityReport>& reports) {
    std::map<Phase, std::size_t> winner;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        auto& r = reports[i];
        r.closest_in_group = false;
        if (r.key_a.phase != r.key_b.phase) continue;
        auto it = winner.find(r.key_a.phase);
        if (it == winner.end()) {
            winner[r.key_a.phase] = i;
            continue;
        }
        const auto& best = reports[it->second];
        if (r.mean_similarity > best.mean_similarity ||
            (r.mean_similarity == best.mean_similarity &&
             std::pair(r.key_a.str(), r.key_b.str()) <
                 std::pair(best.key_a.str(), best.key_b.str())))
            it->second = i;
    }
    for (const auto& [phase, index] : winner)
        reports[index].closest_in_group = true;
}

struct YearPairSimilarity {
    int year_a = 0;
    int year_b = 0;
    double similarity = 0.0;
    bool adjacent = true; // false when a gap year separates the pair
};

// Centroid cosine between consecutive present years. Fewer than two years
// yields an empty series.
inline std::vector<YearPairSimilarity> consecutive_year_series(
    const std::map<int, std::vector<double>>& centroids_by_year) {
    std::vector<YearPairSimilarity> series;
    if (centroids_by_year.size() < 2) return series;
    auto it = centroids_by_year.begin();
    auto prev = it++;
    for (; it != centroids_by_year.end(); prev = it++) {
        series.push_back({prev->first, it->first,
                          cosine_similarity(prev->second, it->second),
                          it->first - prev->first == 1});
    }
    return series;
}

struct YearSimilarity {
    int year = 0;
    double similarity = 0.0;
};

// Same-year cross-country centroid cosine; years missing on either side are
// omitted, not zero-filled.
inline std::vector<YearSimilarity> cross_country_series(
    const std::map<int, std::vector<double>>& centroids_a,
    const std::map<int, std::vector<double>>& centroids_b) {
    std::vector<YearSimilarity> series;
    for (const auto& [year, ca] : centroids_a) {
        auto it = centroids_b.find(year);
        if (it == centroids_b.end()) continue;
        series.push_back({year, cosine_similarity(ca, it->second)});
    }
    return series;
}

} // namespace regulens
