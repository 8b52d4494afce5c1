#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "regulens/embedding.hpp"
#include "regulens/pca.hpp"
#include "regulens/phase_segmenter.hpp"
#include "regulens/similarity.hpp"

using namespace regulens;

namespace {

CorpusKey key(Phase p, const std::string& country, int year = 0) {
    CorpusKey k;
    k.phase = p;
    k.country = country;
    k.year = year;
    return k;
}

std::vector<std::vector<float>> random_unit_vectors(std::size_t n, std::size_t dim,
                                                    std::uint32_t seed) {
    std::mt19937 gen(seed);
    std::normal_distribution<float> dist(0.0f, 1.0f);
    std::vector<std::vector<float>> out(n, std::vector<float>(dim));
    for (auto& v : out) {
        double norm = 0.0;
        for (auto& x : v) {
            x = dist(gen);
            norm += static_cast<double>(x) * x;
        }
        norm = std::sqrt(norm);
        for (auto& x : v) x = static_cast<float>(x / norm);
    }
    return out;
}

double plain_cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

// Full eigendecomposition of a small symmetric matrix by cyclic Jacobi
// rotations; used as the oracle for the power-iteration implementation.
struct EigenPair {
    std::vector<double> values;               // descending
    std::vector<std::vector<double>> vectors; // row k pairs with values[k]
};

EigenPair jacobi_eigen(std::vector<std::vector<double>> a) {
    std::size_t n = a.size();
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-26) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (a[p][q] == 0.0) continue;
                double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    double aip = a[i][p], aiq = a[i][q];
                    a[i][p] = c * aip - s * aiq;
                    a[i][q] = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double api = a[p][i], aqi = a[q][i];
                    a[p][i] = c * api - s * aqi;
                    a[q][i] = s * api + c * aqi;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    double vip = v[i][p], viq = v[i][q];
                    v[i][p] = c * vip - s * viq;
                    v[i][q] = s * vip + c * viq;
                }
            }
        }
    }
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a[x][x] > a[y][y]; });
    EigenPair out;
    for (std::size_t k : order) {
        out.values.push_back(a[k][k]);
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) col[i] = v[i][k];
        out.vectors.push_back(std::move(col));
    }
    return out;
}

std::vector<std::vector<double>> covariance_of(
    const std::vector<std::vector<double>>& rows) {
    std::size_t n = rows.size(), d = rows[0].size();
    std::vector<double> mean(d, 0.0);
    for (const auto& r : rows)
        for (std::size_t i = 0; i < d; ++i) mean[i] += r[i];
    for (auto& m : mean) m /= static_cast<double>(n);
    std::vector<std::vector<double>> cov(d, std::vector<double>(d, 0.0));
    for (const auto& r : rows)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                cov[i][j] += (r[i] - mean[i]) * (r[j] - mean[j]);
    for (auto& row : cov)
        for (auto& x : row) x /= static_cast<double>(n);
    return cov;
}

} // namespace

TEST_CASE("pairwise statistics on identity and orthogonal corpora") {
    auto animal_cn = key(Phase::Animal, "CN", 2020);
    auto animal_usa = key(Phase::Animal, "USA", 2020);

    SECTION("one identical chunk on both sides") {
        std::vector<std::vector<float>> a = {{1.0f, 0.0f}};
        auto r = pairwise_stats(animal_cn, a, animal_usa, a);
        REQUIRE(r.n_pairs == 1);
        REQUIRE(r.mean_similarity == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(r.std_similarity == Catch::Approx(0.0).margin(1e-12));
        REQUIRE(r.mean_distance == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("orthogonal singleton corpora") {
        std::vector<std::vector<float>> a = {{1.0f, 0.0f}};
        std::vector<std::vector<float>> b = {{0.0f, 1.0f}};
        auto r = pairwise_stats(animal_cn, a, animal_usa, b);
        REQUIRE(r.mean_similarity == Catch::Approx(0.0).margin(1e-12));
        REQUIRE(r.mean_distance == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("hand-computed two-by-one cross product") {
        std::vector<std::vector<float>> a = {{1.0f, 0.0f}, {0.0f, 1.0f}};
        std::vector<std::vector<float>> b = {{1.0f, 0.0f}};
        auto r = pairwise_stats(animal_cn, a, animal_usa, b);
        REQUIRE(r.n_pairs == 2);
        REQUIRE(r.mean_similarity == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(r.std_similarity == Catch::Approx(0.5).margin(1e-12));
        REQUIRE(r.mean_distance == Catch::Approx(0.5).margin(1e-12));
    }
    SECTION("distance is exactly one minus similarity") {
        auto va = random_unit_vectors(9, 12, 11);
        auto vb = random_unit_vectors(4, 12, 22);
        auto r = pairwise_stats(animal_cn, va, animal_usa, vb);
        REQUIRE(r.mean_distance == 1.0 - r.mean_similarity);
        REQUIRE(r.std_distance == r.std_similarity);
        REQUIRE(r.mean_similarity >= -1.0);
        REQUIRE(r.mean_similarity <= 1.0);
        REQUIRE(r.std_similarity >= 0.0);
        REQUIRE(r.n_pairs == 36);
    }
    SECTION("empty corpus is rejected by key name") {
        std::vector<std::vector<float>> a = {{1.0f}};
        std::vector<std::vector<float>> none;
        REQUIRE_THROWS_WITH(pairwise_stats(animal_cn, none, animal_usa, a),
                            "empty corpus: Animal_CN2020");
        REQUIRE_THROWS_WITH(pairwise_stats(animal_cn, a, animal_usa, none),
                            "empty corpus: Animal_USA2020");
    }
}

TEST_CASE("pairwise statistics are symmetric bit for bit") {
    auto ka = key(Phase::Clinical, "EU", 2019);
    auto kb = key(Phase::Clinical, "CN", 2019);
    auto va = random_unit_vectors(7, 16, 301);
    auto vb = random_unit_vectors(13, 16, 302);

    auto fwd = pairwise_stats(ka, va, kb, vb);
    auto rev = pairwise_stats(kb, vb, ka, va);
    REQUIRE(fwd.mean_similarity == rev.mean_similarity);
    REQUIRE(fwd.std_similarity == rev.std_similarity);
    REQUIRE(fwd.mean_distance == rev.mean_distance);
    REQUIRE(fwd.n_pairs == rev.n_pairs);
    // keys keep caller order even though the numbers are canonical
    REQUIRE(fwd.key_a.str() == "Clinical_EU2019");
    REQUIRE(rev.key_a.str() == "Clinical_CN2019");
}

TEST_CASE("oversized cross products subsample deterministically") {
    auto ka = key(Phase::Testing, "CN", 2021);
    auto kb = key(Phase::Testing, "EU", 2021);
    auto va = random_unit_vectors(100, 4, 401);
    auto vb = random_unit_vectors(100, 4, 402);

    PairwiseOptions opts;
    opts.max_pairs = 1000;
    opts.seed = 7;

    auto r1 = pairwise_stats(ka, va, kb, vb, opts);
    REQUIRE(r1.n_pairs == 1000);

    SECTION("same seed reproduces the exact statistics") {
        auto r2 = pairwise_stats(ka, va, kb, vb, opts);
        REQUIRE(r1.mean_similarity == r2.mean_similarity);
        REQUIRE(r1.std_similarity == r2.std_similarity);
    }
    SECTION("argument order does not change the sample") {
        auto r2 = pairwise_stats(kb, vb, ka, va, opts);
        REQUIRE(r1.mean_similarity == r2.mean_similarity);
        REQUIRE(r1.std_similarity == r2.std_similarity);
    }
    SECTION("a different seed draws a different sample") {
        auto other = opts;
        other.seed = 8;
        auto r2 = pairwise_stats(ka, va, kb, vb, other);
        REQUIRE(r1.mean_similarity != r2.mean_similarity);
    }
    SECTION("a cap at the full size keeps every pair") {
        auto full = opts;
        full.max_pairs = 10'000;
        auto r2 = pairwise_stats(ka, va, kb, vb, full);
        REQUIRE(r2.n_pairs == 10'000);
        // subsample mean should sit near the full mean
        REQUIRE(r1.mean_similarity ==
                Catch::Approx(r2.mean_similarity).margin(0.05));
    }
}

TEST_CASE("closest pair flags the per-phase argmax") {
    auto report = [&](Phase p, const std::string& ca, const std::string& cb,
                      double mean) {
        SimilarityReport r;
        r.key_a = key(p, ca, 0);
        r.key_b = key(p, cb, 0);
        r.mean_similarity = mean;
        r.mean_distance = 1.0 - mean;
        return r;
    };

    SECTION("argmax wins within the phase") {
        std::vector<SimilarityReport> rs = {report(Phase::Animal, "CN", "EU", 0.3),
                                            report(Phase::Animal, "CN", "USA", 0.7),
                                            report(Phase::Animal, "EU", "USA", 0.5)};
        closest_pairs(rs);
        REQUIRE_FALSE(rs[0].closest_in_group);
        REQUIRE(rs[1].closest_in_group);
        REQUIRE_FALSE(rs[2].closest_in_group);
    }
    SECTION("exact ties fall to the lexicographically first pair") {
        std::vector<SimilarityReport> rs = {report(Phase::Animal, "EU", "USA", 0.4),
                                            report(Phase::Animal, "CN", "EU", 0.4)};
        closest_pairs(rs);
        REQUIRE_FALSE(rs[0].closest_in_group);
        REQUIRE(rs[1].closest_in_group);
    }
    SECTION("phases are flagged independently") {
        std::vector<SimilarityReport> rs = {report(Phase::Animal, "CN", "EU", 0.2),
                                            report(Phase::Animal, "CN", "USA", 0.9),
                                            report(Phase::Clinical, "CN", "EU", 0.8),
                                            report(Phase::Clinical, "CN", "USA", 0.1)};
        closest_pairs(rs);
        REQUIRE(rs[1].closest_in_group);
        REQUIRE(rs[2].closest_in_group);
        REQUIRE_FALSE(rs[0].closest_in_group);
        REQUIRE_FALSE(rs[3].closest_in_group);
    }
    SECTION("mixed-phase reports belong to no group") {
        SimilarityReport cross;
        cross.key_a = key(Phase::Animal, "CN", 0);
        cross.key_b = key(Phase::Clinical, "CN", 0);
        cross.mean_similarity = 0.99;
        std::vector<SimilarityReport> rs = {cross,
                                            report(Phase::Animal, "CN", "EU", 0.1)};
        closest_pairs(rs);
        REQUIRE_FALSE(rs[0].closest_in_group);
        REQUIRE(rs[1].closest_in_group);
    }
    SECTION("winners are invariant under monotone relabeling") {
        std::vector<SimilarityReport> rs = {report(Phase::Animal, "CN", "EU", 0.31),
                                            report(Phase::Animal, "CN", "USA", 0.62),
                                            report(Phase::Animal, "EU", "USA", 0.47)};
        closest_pairs(rs);
        std::vector<bool> before;
        for (const auto& r : rs) before.push_back(r.closest_in_group);
        for (auto& r : rs) r.mean_similarity = 0.5 * r.mean_similarity - 3.0;
        closest_pairs(rs);
        for (std::size_t i = 0; i < rs.size(); ++i)
            REQUIRE(rs[i].closest_in_group == before[i]);
    }
    SECTION("rerunning clears stale flags") {
        std::vector<SimilarityReport> rs = {report(Phase::Animal, "CN", "EU", 0.9),
                                            report(Phase::Animal, "CN", "USA", 0.1)};
        rs[1].closest_in_group = true;
        closest_pairs(rs);
        REQUIRE(rs[0].closest_in_group);
        REQUIRE_FALSE(rs[1].closest_in_group);
    }
}

TEST_CASE("consecutive year series walks the present years") {
    SECTION("identical adjacent years score one") {
        std::map<int, std::vector<double>> by_year = {{2016, {1.0, 2.0}},
                                                      {2017, {1.0, 2.0}}};
        auto series = consecutive_year_series(by_year);
        REQUIRE(series.size() == 1);
        REQUIRE(series[0].year_a == 2016);
        REQUIRE(series[0].year_b == 2017);
        REQUIRE(series[0].adjacent);
        REQUIRE(series[0].similarity == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("a gap year marks the entry non-adjacent") {
        std::map<int, std::vector<double>> by_year = {{2016, {1.0, 0.0}},
                                                      {2018, {0.0, 1.0}}};
        auto series = consecutive_year_series(by_year);
        REQUIRE(series.size() == 1);
        REQUIRE(series[0].year_a == 2016);
        REQUIRE(series[0].year_b == 2018);
        REQUIRE_FALSE(series[0].adjacent);
        REQUIRE(series[0].similarity == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("fewer than two years yields an empty series") {
        REQUIRE(consecutive_year_series({}).empty());
        REQUIRE(consecutive_year_series({{2020, {1.0}}}).empty());
    }
    SECTION("a drifting corpus matches a direct recomputation") {
        std::map<int, std::vector<double>> by_year;
        for (int year = 2015; year <= 2019; ++year) {
            double t = (year - 2015) * 0.4;
            by_year[year] = {std::cos(t), std::sin(t), 0.1 * t};
        }
        auto series = consecutive_year_series(by_year);
        REQUIRE(series.size() == 4);
        for (const auto& entry : series) {
            REQUIRE(entry.adjacent);
            double expect = plain_cosine(by_year.at(entry.year_a),
                                         by_year.at(entry.year_b));
            REQUIRE(entry.similarity == Catch::Approx(expect).margin(1e-12));
        }
    }
}

TEST_CASE("cross-country series keeps only shared years") {
    SECTION("identical corpora in a shared year score one") {
        std::map<int, std::vector<double>> cn = {{2020, {3.0, 4.0}}};
        std::map<int, std::vector<double>> usa = {{2020, {3.0, 4.0}}};
        auto series = cross_country_series(cn, usa);
        REQUIRE(series.size() == 1);
        REQUIRE(series[0].year == 2020);
        REQUIRE(series[0].similarity == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("years missing on either side are omitted, not zeroed") {
        std::map<int, std::vector<double>> a = {{2020, {1.0, 0.0}},
                                                {2021, {1.0, 1.0}}};
        std::map<int, std::vector<double>> b = {{2021, {1.0, 1.0}},
                                                {2022, {0.0, 1.0}}};
        auto series = cross_country_series(a, b);
        REQUIRE(series.size() == 1);
        REQUIRE(series[0].year == 2021);
        REQUIRE(series[0].similarity == Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("disjoint vocabularies land near orthogonal under hashing") {
    // Hashed tf-idf at dim 1024: corpora sharing no tokens should collide so
    // rarely that |cosine| stays at noise level. The 0.1 ceiling holds for
    // word-like tokens; sequential machine-generated names (shared digit
    // suffixes) defeat it, because buckets take the hash mod 2^10 and the
    // low bits never feel the high ones.
    std::mt19937 gen(808);
    std::uniform_int_distribution<int> len(5, 10), letter(0, 25);
    auto word = [&]() {
        std::string w;
        int n = len(gen);
        for (int i = 0; i < n; ++i) w.push_back(static_cast<char>('a' + letter(gen)));
        return w;
    };
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        std::set<std::string> vocab;
        while (vocab.size() < 160) vocab.insert(word());
        std::vector<std::string> left, right;
        for (const auto& w : vocab)
            (left.size() < 80 ? left : right).push_back(w);
        Chunk ca, cb;
        ca.chunk_id = "left#0";
        ca.tokens = left;
        cb.chunk_id = "right#0";
        cb.tokens = right;
        auto stats = fit_tfidf({ca, cb});
        auto va = embed_tfidf(left, stats, 1024);
        auto vb = embed_tfidf(right, stats, 1024);
        worst = std::max(worst, std::abs(static_cast<double>(
                                    cosine_similarity(va, vb))));
    }
    REQUIRE(worst <= 0.1);
}

TEST_CASE("projection recovers degenerate geometry") {
    SECTION("a jittered line in 8 dimensions loads one axis") {
        std::mt19937 gen(515);
        std::normal_distribution<double> noise(0.0, 1e-4);
        std::vector<double> u = {0.5, -0.5, 0.25, 0.25, 0.5, 0.0, -0.25, 0.25};
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < 40; ++i) {
            double t = -2.0 + i * 0.1;
            std::vector<double> p(8);
            for (int j = 0; j < 8; ++j) p[j] = t * u[j] + noise(gen);
            pts.push_back(std::move(p));
        }
        auto proj = pca_project(pts, 2);
        REQUIRE(proj.explained_variance[0] >= 0.999);
        REQUIRE(proj.explained_variance[0] >= proj.explained_variance[1]);
        REQUIRE(proj.points.size() == 40);
    }
    SECTION("the isotropic three-point simplex splits variance evenly") {
        double a = 2.0 * 3.14159265358979323846 / 3.0;
        std::vector<std::vector<double>> pts = {
            {1.0, 0.0},
            {std::cos(a), std::sin(a)},
            {std::cos(2 * a), std::sin(2 * a)}};
        auto proj = pca_project(pts, 2);
        REQUIRE(std::abs(proj.explained_variance[0] -
                         proj.explained_variance[1]) <= 1e-9);
        REQUIRE(proj.explained_variance[0] == Catch::Approx(0.5).margin(1e-9));
    }
}

TEST_CASE("projection matches a full eigendecomposition on rank-2 data") {
    // Exact-rank-2 cloud in 8D: points are combinations of two fixed
    // directions, so a 2D projection must reconstruct each centered point.
    std::mt19937 gen(616);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> u(8), w(8);
    for (auto& x : u) x = dist(gen);
    for (auto& x : w) x = dist(gen);
    double uu = 0.0;
    for (double x : u) uu += x * x;
    for (auto& x : u) x /= std::sqrt(uu);
    double uw = 0.0;
    for (int i = 0; i < 8; ++i) uw += u[i] * w[i];
    for (int i = 0; i < 8; ++i) w[i] -= uw * u[i];
    double ww = 0.0;
    for (double x : w) ww += x * x;
    for (auto& x : w) x /= std::sqrt(ww);

    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 60; ++i) {
        double s = dist(gen) * 3.0, t = dist(gen);
        std::vector<double> p(8);
        for (int j = 0; j < 8; ++j) p[j] = s * u[j] + t * w[j];
        pts.push_back(std::move(p));
    }

    auto proj = pca_project(pts, 2);

    SECTION("axes are orthonormal") {
        double a00 = 0.0, a11 = 0.0, a01 = 0.0;
        for (int j = 0; j < 8; ++j) {
            a00 += proj.axes[0][j] * proj.axes[0][j];
            a11 += proj.axes[1][j] * proj.axes[1][j];
            a01 += proj.axes[0][j] * proj.axes[1][j];
        }
        REQUIRE(a00 == Catch::Approx(1.0).margin(1e-9));
        REQUIRE(a11 == Catch::Approx(1.0).margin(1e-9));
        REQUIRE(a01 == Catch::Approx(0.0).margin(1e-9));
    }
    SECTION("explained variance is a non-increasing fraction summing to one") {
        REQUIRE(proj.explained_variance[0] >= proj.explained_variance[1]);
        REQUIRE(proj.explained_variance[0] + proj.explained_variance[1] ==
                Catch::Approx(1.0).margin(1e-9));
    }
    SECTION("each centered point reconstructs through the plane") {
        std::vector<double> mean(8, 0.0);
        for (const auto& p : pts)
            for (int j = 0; j < 8; ++j) mean[j] += p[j];
        for (auto& m : mean) m /= static_cast<double>(pts.size());
        for (std::size_t r = 0; r < pts.size(); ++r) {
            double err = 0.0;
            for (int j = 0; j < 8; ++j) {
                double rec = proj.points[r][0] * proj.axes[0][j] +
                             proj.points[r][1] * proj.axes[1][j];
                double diff = (pts[r][j] - mean[j]) - rec;
                err += diff * diff;
            }
            REQUIRE(std::sqrt(err) < 1e-6);
        }
    }
    SECTION("axes agree with the Jacobi oracle up to sign") {
        auto eig = jacobi_eigen(covariance_of(pts));
        double trace = 0.0;
        for (double v : eig.values) trace += v;
        for (int k = 0; k < 2; ++k) {
            REQUIRE(proj.explained_variance[k] ==
                    Catch::Approx(eig.values[k] / trace).margin(1e-9));
            double dot = 0.0;
            for (int j = 0; j < 8; ++j) dot += proj.axes[k][j] * eig.vectors[k][j];
            REQUIRE(std::abs(dot) == Catch::Approx(1.0).margin(1e-6));
        }
    }
    SECTION("the sign convention points the largest loading up") {
        for (int k = 0; k < 2; ++k) {
            std::size_t arg = 0;
            for (std::size_t j = 1; j < 8; ++j)
                if (std::abs(proj.axes[k][j]) > std::abs(proj.axes[k][arg]))
                    arg = j;
            REQUIRE(proj.axes[k][arg] > 0.0);
        }
    }
    SECTION("labels attach to points when provided") {
        std::vector<std::string> labels;
        for (std::size_t i = 0; i < pts.size(); ++i)
            labels.push_back("chunk#" + std::to_string(i));
        auto tagged = pca_project(labels, pts, 2);
        REQUIRE(tagged.labels.size() == pts.size());
        REQUIRE(tagged.labels[3] == "chunk#3");
        REQUIRE(tagged.points[5][0] == proj.points[5][0]);
    }
}

TEST_CASE("projection rejects rank-deficient input") {
    SECTION("constant points carry no variance") {
        std::vector<std::vector<double>> pts(5, std::vector<double>{1.0, 2.0, 3.0});
        REQUIRE_THROWS_WITH(pca_project(pts, 2), "insufficient variance rank");
    }
    SECTION("a perfect line cannot support two axes") {
        std::vector<std::vector<double>> pts;
        for (int i = 0; i < 10; ++i)
            pts.push_back({1.0 * i, 2.0 * i, -1.0 * i});
        REQUIRE_THROWS_WITH(pca_project(pts, 2), "insufficient variance rank");
    }
    SECTION("too few vectors or bad dims are rejected up front") {
        std::vector<std::vector<double>> two = {{1.0, 0.0}, {0.0, 1.0}};
        REQUIRE_THROWS(pca_project(two, 2));
        std::vector<std::vector<double>> four = {
            {1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {2.0, 1.0}};
        REQUIRE_THROWS(pca_project(four, 4));
    }
}
