// Pipeline driver: ingest -> segment -> embed -> compare/lda/ner/trend/summarize.
// Stage artifacts live in the workspace; reports and charts go to --out.
// Exit codes: 0 success, 1 runtime failure, 2 missing prerequisite stage,
// 3 bad configuration. Errors are a single "error: ..." line on stderr.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "regulens/corpus_key.hpp"
#include "regulens/corpus_store.hpp"
#include "regulens/csv.hpp"
#include "regulens/embedding.hpp"
#include "regulens/entity_recognizer.hpp"
#include "regulens/errors.hpp"
#include "regulens/http_embedder.hpp"
#include "regulens/pca.hpp"
#include "regulens/phase_segmenter.hpp"
#include "regulens/similarity.hpp"
#include "regulens/summarizer.hpp"
#include "regulens/svg_chart.hpp"
#include "regulens/term_trends.hpp"
#include "regulens/topic_model.hpp"
#include "regulens/vector_store.hpp"

namespace {

using namespace regulens;
using nlohmann::json;
namespace fs = std::filesystem;

std::string fmt_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, p);
}

Phase phase_from_flag(const std::string& raw) {
    std::string low = to_lower(raw);
    if (low == "animal") return Phase::Animal;
    if (low == "clinical") return Phase::Clinical;
    if (low == "testing") return Phase::Testing;
    if (low == "other") return Phase::Other;
    throw config_error("unknown phase: " + raw);
}

struct BackendConfig {
    std::string kind = "tfidf"; // tfidf | precomputed | http
    int dim = 1024;
    std::string vectors; // precomputed: JSON file of chunk_id -> float array
    std::string url;     // http: remote encoder base URL
};

struct RunConfig {
    std::string workspace;
    std::string out;
    std::uint64_t seed = 0;
    std::string manifest;
    int year_min = 2000;
    int year_max = 2100;
    int chunk_size = 256;
    int boilerplate_repeats = 3;
    std::map<Phase, std::vector<std::string>> phase_keywords; // overrides only
    BackendConfig backend;
    LdaConfig lda;
    int lda_top_terms = 10;
    SummaryConfig summary;
    std::string gazetteers = "data/gazetteers";
    int ner_top_n = 3;
    std::string trend_term;
    std::vector<std::string> trend_countries;
};

void apply_config_file(RunConfig& cfg, const fs::path& path) {
    json j;
    try {
        j = json::parse(detail::read_file(path));
    } catch (const json::exception& e) {
        throw config_error("config: " + std::string(e.what()));
    }
    if (!j.is_object()) throw config_error("config: expected a JSON object");
    try {
        if (j.contains("workspace")) cfg.workspace = j.at("workspace").get<std::string>();
        if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("manifest")) cfg.manifest = j.at("manifest").get<std::string>();
        if (j.contains("year_min")) cfg.year_min = j.at("year_min").get<int>();
        if (j.contains("year_max")) cfg.year_max = j.at("year_max").get<int>();
        if (j.contains("chunk_size")) cfg.chunk_size = j.at("chunk_size").get<int>();
        if (j.contains("boilerplate_repeats"))
            cfg.boilerplate_repeats = j.at("boilerplate_repeats").get<int>();
        if (j.contains("phase_keywords"))
            for (const auto& [name, words] : j.at("phase_keywords").items())
                cfg.phase_keywords[phase_from_flag(name)] =
                    words.get<std::vector<std::string>>();
        if (j.contains("backend")) {
            const auto& b = j.at("backend");
            if (b.contains("kind")) cfg.backend.kind = b.at("kind").get<std::string>();
            if (b.contains("dim")) cfg.backend.dim = b.at("dim").get<int>();
            if (b.contains("vectors")) cfg.backend.vectors = b.at("vectors").get<std::string>();
            if (b.contains("url")) cfg.backend.url = b.at("url").get<std::string>();
        }
        if (j.contains("lda")) {
            const auto& l = j.at("lda");
            if (l.contains("k")) cfg.lda.K = l.at("k").get<int>();
            if (l.contains("k_grid")) cfg.lda.k_grid = l.at("k_grid").get<std::vector<int>>();
            if (l.contains("alpha")) cfg.lda.alpha = l.at("alpha").get<double>();
            if (l.contains("beta")) cfg.lda.beta = l.at("beta").get<double>();
            if (l.contains("iterations")) cfg.lda.iterations = l.at("iterations").get<int>();
            if (l.contains("burn_in")) cfg.lda.burn_in = l.at("burn_in").get<int>();
            if (l.contains("top_terms")) cfg.lda_top_terms = l.at("top_terms").get<int>();
        }
        if (j.contains("summary")) {
            const auto& s = j.at("summary");
            if (s.contains("k_sentences")) cfg.summary.k_sentences = s.at("k_sentences").get<int>();
            if (s.contains("lambda")) cfg.summary.lambda = s.at("lambda").get<double>();
            if (s.contains("min_sentence_tokens"))
                cfg.summary.min_sentence_tokens = s.at("min_sentence_tokens").get<int>();
        }
        if (j.contains("gazetteers")) cfg.gazetteers = j.at("gazetteers").get<std::string>();
        if (j.contains("ner_top_n")) cfg.ner_top_n = j.at("ner_top_n").get<int>();
        if (j.contains("trend")) {
            const auto& t = j.at("trend");
            if (t.contains("term")) cfg.trend_term = t.at("term").get<std::string>();
            if (t.contains("countries"))
                cfg.trend_countries = t.at("countries").get<std::vector<std::string>>();
        }
    } catch (const json::exception& e) {
        throw config_error("config: " + std::string(e.what()));
    }
}

json config_json(const RunConfig& cfg, const std::string& command, const json& args) {
    json pk = json::object();
    for (const auto& [p, words] : cfg.phase_keywords) pk[phase_name(p)] = words;
    return {{"command", command},
            {"args", args},
            {"workspace", cfg.workspace},
            {"out", cfg.out},
            {"seed", cfg.seed},
            {"manifest", cfg.manifest},
            {"year_min", cfg.year_min},
            {"year_max", cfg.year_max},
            {"chunk_size", cfg.chunk_size},
            {"boilerplate_repeats", cfg.boilerplate_repeats},
            {"phase_keywords", pk},
            {"backend",
             {{"kind", cfg.backend.kind},
              {"dim", cfg.backend.dim},
              {"vectors", cfg.backend.vectors},
              {"url", cfg.backend.url}}},
            {"lda",
             {{"k", cfg.lda.K},
              {"k_grid", cfg.lda.k_grid},
              {"alpha", cfg.lda.alpha},
              {"beta", cfg.lda.beta},
              {"iterations", cfg.lda.iterations},
              {"burn_in", cfg.lda.burn_in},
              {"top_terms", cfg.lda_top_terms}}},
            {"summary",
             {{"k_sentences", cfg.summary.k_sentences},
              {"lambda", cfg.summary.lambda},
              {"min_sentence_tokens", cfg.summary.min_sentence_tokens}}},
            {"gazetteers", cfg.gazetteers},
            {"ner_top_n", cfg.ner_top_n},
            {"trend", {{"term", cfg.trend_term}, {"countries", cfg.trend_countries}}}};
}

// Advisory exclusive lock on the workspace, held for the process lifetime.
struct WorkspaceLock {
    int fd = -1;

    explicit WorkspaceLock(const fs::path& path) {
        fd = ::open(path.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
        if (fd < 0)
            throw std::runtime_error("cannot open lock: " + path.string());
        if (::flock(fd, LOCK_EX | LOCK_NB) != 0) {
            ::close(fd);
            fd = -1;
            throw std::runtime_error("workspace locked: " + path.string());
        }
    }
    ~WorkspaceLock() {
        if (fd >= 0) ::close(fd);
    }
    WorkspaceLock(const WorkspaceLock&) = delete;
    WorkspaceLock& operator=(const WorkspaceLock&) = delete;
};

void require_stage(const fs::path& artifact, const std::string& stage) {
    if (!fs::exists(artifact)) throw stage_error(stage);
}

SegmentOptions segment_options(const RunConfig& cfg) {
    SegmentOptions opts;
    opts.chunk_size = cfg.chunk_size;
    opts.boilerplate_repeats = cfg.boilerplate_repeats;
    for (const auto& [p, words] : cfg.phase_keywords)
        opts.phase_keywords.keywords[p] = words;
    return opts;
}

std::vector<std::string> workspace_countries(const Workspace& ws) {
    std::vector<std::string> out; // index is sorted by country already
    for (const auto& h : list_documents(ws))
        if (out.empty() || out.back() != h.country) out.push_back(h.country);
    return out;
}

void cmd_ingest(const RunConfig& cfg, const Workspace& ws) {
    if (cfg.manifest.empty()) throw config_error("ingest: manifest required");
    IngestOptions opts;
    opts.year_min = cfg.year_min;
    opts.year_max = cfg.year_max;
    auto stats = ingest_manifest(cfg.manifest, ws, opts);
    json report = {{"documents", stats.docs_loaded},
                   {"tokens_estimated", stats.tokens_estimated},
                   {"per_country", stats.per_country}};
    detail::write_file(fs::path(cfg.out) / "ingest.json", report.dump(2) + "\n");
}

void cmd_segment(const RunConfig& cfg, const Workspace& ws) {
    require_stage(ws.documents_path(), "ingest");
    require_stage(ws.index_path(), "ingest");
    auto result = segment_workspace(ws, segment_options(cfg));
    json counts = json::object();
    for (const auto& [key, n] : result.sentence_counts) counts[key.str()] = n;
    json report = {{"chunks", result.chunks.size()}, {"sentence_counts", counts}};
    detail::write_file(fs::path(cfg.out) / "segment.json", report.dump(2) + "\n");
}

void cmd_embed(const RunConfig& cfg, const Workspace& ws) {
    require_stage(ws.chunks_path(), "segment");
    auto chunks = load_chunks(ws);
    if (chunks.empty()) throw std::runtime_error("no chunks to embed");

    VectorStore store;
    const auto& b = cfg.backend;
    if (b.kind == "tfidf") {
        if (b.dim <= 0) throw config_error("backend: dim must be positive");
        auto stats = fit_tfidf(chunks);
        json tj = {{"df", stats.df}, {"n_chunks", stats.n_chunks}};
        detail::write_file(ws.tfidf_path(), tj.dump() + "\n");
        store.dim = static_cast<std::uint32_t>(b.dim);
        for (const auto& c : chunks)
            store.records.emplace_back(c.chunk_id,
                                       embed_tfidf(c.tokens, stats, b.dim));
    } else if (b.kind == "precomputed" || b.kind == "http") {
        std::unique_ptr<EmbedBackend> backend;
        if (b.kind == "precomputed") {
            if (b.vectors.empty())
                throw config_error("backend: vectors path required");
            auto pre = std::make_unique<PrecomputedBackend>();
            json pj;
            try {
                pj = json::parse(detail::read_file(b.vectors));
                for (const auto& [id, arr] : pj.items())
                    pre->by_id[id] = arr.get<std::vector<float>>();
            } catch (const json::exception& e) {
                throw std::runtime_error("vectors file: " + std::string(e.what()));
            }
            backend = std::move(pre);
        } else {
            if (b.url.empty()) throw config_error("backend: url required");
            backend = std::make_unique<HttpBackend>(b.url);
        }
        std::vector<std::string> ids;
        std::vector<std::vector<std::string>> token_lists;
        for (const auto& c : chunks) {
            ids.push_back(c.chunk_id);
            token_lists.push_back(c.tokens);
        }
        auto vecs = backend->embed(ids, token_lists);
        if (vecs.empty() || vecs[0].empty())
            throw std::runtime_error("backend returned no vectors");
        store.dim = static_cast<std::uint32_t>(vecs[0].size());
        for (std::size_t i = 0; i < ids.size(); ++i)
            store.records.emplace_back(ids[i], std::move(vecs[i]));
    } else {
        throw config_error("backend: unknown kind: " + b.kind);
    }
    save_vectors(ws.vectors_path(), store);
    json report = {{"backend", b.kind},
                   {"chunks", store.records.size()},
                   {"dim", store.dim}};
    detail::write_file(fs::path(cfg.out) / "embed.json", report.dump(2) + "\n");
}

void cmd_compare(const RunConfig& cfg, const Workspace& ws,
                 const std::optional<std::string>& phase_flag,
                 const std::optional<std::string>& a_flag,
                 const std::optional<std::string>& b_flag, bool project) {
    std::optional<Phase> only_phase; // flag validation precedes staging
    if (phase_flag) only_phase = phase_from_flag(*phase_flag);
    if (a_flag.has_value() != b_flag.has_value())
        throw config_error("compare: --a and --b must be given together");
    require_stage(ws.vectors_path(), "embed");
    require_stage(ws.chunks_path(), "segment");

    auto chunks = load_chunks(ws);
    auto store = load_vectors(ws.vectors_path());
    std::map<std::string, const std::vector<float>*> by_id;
    for (const auto& [id, vec] : store.records) by_id[id] = &vec;

    // Years are aggregated: corpora here are (phase, country).
    std::map<Phase, std::map<std::string, std::vector<std::vector<float>>>> groups;
    std::set<std::string> countries_seen;
    for (const auto& c : chunks) {
        auto it = by_id.find(c.chunk_id);
        if (it == by_id.end())
            throw std::runtime_error("no vector for chunk: " + c.chunk_id +
                                     "; re-run `embed`");
        groups[c.key.phase][c.key.country].push_back(*it->second);
        countries_seen.insert(c.key.country);
    }

    std::optional<std::string> want_a, want_b;
    if (a_flag) {
        want_a = normalize_country(*a_flag);
        want_b = normalize_country(*b_flag);
        if (!countries_seen.count(*want_a))
            throw std::runtime_error("unknown country: " + *a_flag);
        if (!countries_seen.count(*want_b))
            throw std::runtime_error("unknown country: " + *b_flag);
    }

    PairwiseOptions popts;
    popts.seed = cfg.seed;
    const std::vector<std::string> header = {
        "key_a",           "key_b",          "n_pairs",
        "mean_similarity", "std_similarity", "mean_distance", "closest"};

    for (Phase p : all_phases) {
        if (only_phase && p != *only_phase) continue;
        auto git = groups.find(p);
        if (git == groups.end() && !only_phase) continue;

        std::vector<std::pair<std::string, std::string>> pairs;
        if (git != groups.end()) {
            if (want_a) {
                if (git->second.count(*want_a) && git->second.count(*want_b))
                    pairs.emplace_back(*want_a, *want_b);
            } else {
                std::vector<std::string> cs;
                for (const auto& [c, vecs] : git->second) cs.push_back(c);
                for (std::size_t i = 0; i < cs.size(); ++i)
                    for (std::size_t j = i + 1; j < cs.size(); ++j)
                        pairs.emplace_back(cs[i], cs[j]);
            }
        }

        std::vector<SimilarityReport> reports;
        for (const auto& [ca, cb] : pairs)
            reports.push_back(pairwise_stats({p, ca, 0}, git->second.at(ca),
                                             {p, cb, 0}, git->second.at(cb),
                                             popts));
        closest_pairs(reports);

        std::vector<std::vector<std::string>> rows;
        json jreports = json::array();
        for (const auto& r : reports) {
            rows.push_back({r.key_a.str(), r.key_b.str(),
                            std::to_string(r.n_pairs),
                            fmt_double(r.mean_similarity),
                            fmt_double(r.std_similarity),
                            fmt_double(r.mean_distance),
                            r.closest_in_group ? "true" : "false"});
            jreports.push_back({{"key_a", r.key_a.str()},
                                {"key_b", r.key_b.str()},
                                {"n_pairs", r.n_pairs},
                                {"mean_similarity", r.mean_similarity},
                                {"std_similarity", r.std_similarity},
                                {"mean_distance", r.mean_distance},
                                {"std_distance", r.std_distance},
                                {"closest_in_group", r.closest_in_group}});
        }
        std::string slug = to_lower(phase_name(p));
        write_csv(fs::path(cfg.out) / ("compare_" + slug + ".csv"), header, rows);
        detail::write_file(fs::path(cfg.out) / ("compare_" + slug + ".json"),
                           jreports.dump(2) + "\n");

        if (project) {
            std::vector<std::string> labels, countries;
            std::vector<std::vector<float>> vecs;
            for (const auto& c : chunks) {
                if (c.key.phase != p) continue;
                labels.push_back(c.chunk_id);
                countries.push_back(c.key.country);
                vecs.push_back(*by_id.at(c.chunk_id));
            }
            if (vecs.size() >= 3) { // rank-2 projection needs dims+1 points
                Projection proj;
                bool degenerate = false;
                try {
                    proj = pca_project(labels, vecs, 2);
                } catch (const std::runtime_error& e) {
                    // A phase whose chunks span fewer than two directions has
                    // no rank-2 projection; skip it rather than fail the run.
                    if (std::string(e.what()) != "insufficient variance rank")
                        throw;
                    degenerate = true;
                }
                if (!degenerate) {
                    std::vector<std::vector<std::string>> prows;
                    for (std::size_t i = 0; i < proj.points.size(); ++i)
                        prows.push_back({proj.labels[i], countries[i],
                                         fmt_double(proj.points[i][0]),
                                         fmt_double(proj.points[i][1])});
                    write_csv(fs::path(cfg.out) / ("projection_" + slug + ".csv"),
                              {"chunk_id", "country", "x", "y"}, prows);
                }
            }
        }
    }
}

void emit_term_heatmap(const Workspace& ws, const RunConfig& cfg,
                       const std::string& country, const fs::path& csv_path,
                       const fs::path& svg_path) {
    auto cells = term_heatmap_top(ws, country, cfg.lda_top_terms);
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : cells)
        rows.push_back({std::to_string(c.year), c.term, std::to_string(c.count)});
    write_csv(csv_path, {"year", "term", "count"}, rows);
    if (cells.empty()) return;

    std::vector<int> years; // cells are ordered (year, term), dense
    for (const auto& c : cells)
        if (years.empty() || years.back() != c.year) years.push_back(c.year);
    std::size_t n_terms = cells.size() / years.size();
    if (n_terms == 0) return;
    HeatmapGrid grid;
    for (std::size_t r = 0; r < n_terms; ++r) grid.row_labels.push_back(cells[r].term);
    for (int y : years) grid.col_labels.push_back(std::to_string(y));
    grid.values.assign(n_terms, std::vector<double>(years.size(), 0.0));
    for (std::size_t i = 0; i < cells.size(); ++i)
        grid.values[i % n_terms][i / n_terms] =
            static_cast<double>(cells[i].count);
    emit_svg_chart(grid, svg_path);
}

void cmd_lda(const RunConfig& cfg, const Workspace& ws,
             const std::optional<std::string>& country,
             const std::optional<int>& year) {
    require_stage(ws.documents_path(), "ingest");
    require_stage(ws.index_path(), "ingest");
    auto docs = load_documents(ws);

    std::optional<std::string> want;
    if (country) {
        want = normalize_country(*country);
        bool any = std::any_of(docs.begin(), docs.end(),
                               [&](const Document& d) { return d.country == *want; });
        if (!any) throw std::runtime_error("unknown country: " + *country);
    }
    std::vector<TokenStream> streams;
    std::size_t total_tokens = 0;
    for (const auto& d : docs) {
        if (want && d.country != *want) continue;
        if (year && d.year != *year) continue;
        streams.push_back(normalize_text(
            strip_boilerplate_text(d.raw_text, cfg.boilerplate_repeats)));
        total_tokens += streams.back().size();
    }
    if (streams.empty()) throw std::runtime_error("no documents selected");
    if (total_tokens == 0)
        throw std::runtime_error("no tokens in selected documents");

    LdaConfig lc = cfg.lda;
    lc.seed = cfg.seed;
    json selection;
    if (lc.K == 0) {
        auto sel = select_k(streams, lc);
        lc.K = sel.best_k;
        json grid = json::array();
        for (const auto& [k, score] : sel.grid_scores)
            grid.push_back({{"k", k}, {"coherence", score}});
        selection = {{"best_k", sel.best_k}, {"grid", grid}};
    }
    auto model = fit_lda(streams, lc);
    model.coherence = umass_coherence(model, streams);
    json mj = model_json(model);
    if (!selection.is_null()) mj["selection"] = selection;
    detail::write_file(fs::path(cfg.out) / "lda_model.json", mj.dump(2) + "\n");

    if (want) {
        emit_term_heatmap(ws, cfg, *want, fs::path(cfg.out) / "lda_heatmap.csv",
                          fs::path(cfg.out) / "lda_heatmap.svg");
    } else {
        for (const auto& c : workspace_countries(ws)) {
            std::string slug = to_lower(c);
            emit_term_heatmap(ws, cfg, c,
                              fs::path(cfg.out) / ("lda_heatmap_" + slug + ".csv"),
                              fs::path(cfg.out) / ("lda_heatmap_" + slug + ".svg"));
        }
    }
}

void cmd_ner(const RunConfig& cfg, const Workspace& ws,
             const std::optional<std::string>& country,
             const std::optional<int>& year) {
    require_stage(ws.documents_path(), "ingest");
    require_stage(ws.index_path(), "ingest");
    std::optional<std::string> want;
    if (country) {
        want = normalize_country(*country);
        if (list_documents(ws, {*country, std::nullopt}).empty())
            throw std::runtime_error("unknown country: " + *country);
    }

    auto gz = Gazetteers::load(cfg.gazetteers);
    run_ner(ws, gz); // full-corpus mentions.jsonl in the workspace

    MentionFilter filter;
    if (country) filter.country = *country;
    if (year) filter.year = *year;
    auto dist = entity_distribution(ws, filter);
    std::vector<std::vector<std::string>> drows;
    for (const auto& r : dist.rows)
        drows.push_back({category_name(r.category), std::to_string(r.count),
                         fmt_double(r.percentage)});
    write_csv(fs::path(cfg.out) / "entity_distribution.csv",
              {"category", "count", "percentage"}, drows);

    std::vector<std::string> countries =
        want ? std::vector<std::string>{*want} : workspace_countries(ws);
    std::vector<std::vector<std::string>> trows;
    for (const auto& c : countries)
        for (const auto& r : top_entities_by_year(ws, c, cfg.ner_top_n))
            trows.push_back({c, std::to_string(r.year), std::to_string(r.rank),
                             r.surface, std::to_string(r.count)});
    write_csv(fs::path(cfg.out) / "top_entities.csv",
              {"country", "year", "rank", "surface", "count"}, trows);
}

void cmd_trend(const RunConfig& cfg, const Workspace& ws) {
    if (cfg.trend_term.empty()) throw config_error("trend: term required");
    require_stage(ws.documents_path(), "ingest");
    require_stage(ws.index_path(), "ingest");
    std::vector<std::string> countries = cfg.trend_countries;
    if (countries.empty()) countries = workspace_countries(ws);
    if (countries.empty()) throw std::runtime_error("no documents ingested");

    auto series = trend_series(ws, cfg.trend_term, countries);
    std::vector<std::vector<std::string>> rows;
    std::vector<LineSeries> chart;
    for (const auto& s : series) {
        LineSeries line{s.country, {}};
        for (const auto& p : s.points) {
            rows.push_back({s.term, s.country, std::to_string(p.year),
                            std::to_string(p.count)});
            line.points.emplace_back(static_cast<double>(p.year),
                                     static_cast<double>(p.count));
        }
        chart.push_back(std::move(line));
    }
    write_csv(fs::path(cfg.out) / "trend.csv",
              {"term", "country", "year", "count"}, rows);
    emit_svg_chart(chart, fs::path(cfg.out) / "trend.svg");
}

TfidfStats load_tfidf(const fs::path& path) {
    try {
        json j = json::parse(detail::read_file(path));
        TfidfStats s;
        s.n_chunks = j.at("n_chunks").get<std::uint64_t>();
        s.df = j.at("df").get<std::map<std::string, std::uint64_t>>();
        return s;
    } catch (const json::exception& e) {
        throw std::runtime_error("tfidf stats: " + std::string(e.what()));
    }
}

void cmd_summarize(const RunConfig& cfg, const Workspace& ws,
                   const std::optional<std::string>& phase_flag,
                   const std::optional<std::string>& country) {
    std::optional<Phase> want_p; // flag validation precedes staging
    if (phase_flag) want_p = phase_from_flag(*phase_flag);
    require_stage(ws.documents_path(), "ingest");
    require_stage(ws.tfidf_path(), "embed");

    std::optional<std::string> want_c;
    if (country) {
        want_c = normalize_country(*country);
        if (list_documents(ws, {*country, std::nullopt}).empty())
            throw std::runtime_error("unknown country: " + *country);
    }

    TfidfBackend backend(load_tfidf(ws.tfidf_path()), cfg.backend.dim);
    auto corpora = build_phase_corpora(ws, segment_options(cfg));
    std::map<std::pair<Phase, std::string>, std::vector<Sentence>> merged;
    for (const auto& [key, sents] : corpora) {
        if (want_p && key.phase != *want_p) continue;
        if (want_c && key.country != *want_c) continue;
        auto& dst = merged[{key.phase, key.country}];
        dst.insert(dst.end(), sents.begin(), sents.end());
    }

    json summaries = json::array();
    for (const auto& [pc, sents] : merged) {
        bool eligible = std::any_of(
            sents.begin(), sents.end(), [&](const Sentence& s) {
                return normalize_text(s.text).size() >=
                       static_cast<std::size_t>(
                           std::max(cfg.summary.min_sentence_tokens, 0));
            });
        if (!eligible) continue;
        auto summary = summarize_corpus(sents, backend, cfg.summary);
        summaries.push_back(summary_json(CorpusKey{pc.first, pc.second, 0}.str(),
                                         summary, cfg.summary));
    }
    if (summaries.empty())
        throw std::runtime_error("summary: no eligible sentences");
    detail::write_file(fs::path(cfg.out) / "summaries.json",
                       summaries.dump(2) + "\n");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"corpus analytics for regulatory document collections"};
    app.require_subcommand(1);

    std::string flag_config, flag_workspace, flag_out;
    std::uint64_t flag_seed = 0;
    auto* opt_config = app.add_option("--config", flag_config, "JSON config file");
    auto* opt_workspace = app.add_option(
        "--workspace", flag_workspace,
        "workspace directory (default: env REGULENS_WORKSPACE)");
    auto* opt_out = app.add_option("--out", flag_out,
                                   "output directory (default: <workspace>/out)");
    auto* opt_seed = app.add_option("--seed", flag_seed, "global RNG seed");

    auto* sub_ingest =
        app.add_subcommand("ingest", "load a document manifest into the workspace");
    sub_ingest->fallthrough();
    std::string flag_manifest;
    auto* opt_manifest =
        sub_ingest->add_option("--manifest", flag_manifest, "JSONL manifest path");

    auto* sub_segment = app.add_subcommand(
        "segment", "split documents into phase-labeled sentence chunks");
    sub_segment->fallthrough();
    int flag_chunk_size = 0;
    auto* opt_chunk_size = sub_segment->add_option(
        "--chunk-size", flag_chunk_size, "max normalized tokens per chunk");

    auto* sub_embed = app.add_subcommand("embed", "embed chunks into vectors");
    sub_embed->fallthrough();
    std::string flag_backend, flag_vectors;
    int flag_dim = 0;
    auto* opt_backend = sub_embed->add_option(
        "--backend", flag_backend, "embedding backend: tfidf|precomputed|http");
    auto* opt_dim = sub_embed->add_option("--dim", flag_dim, "tfidf vector size");
    auto* opt_vectors = sub_embed->add_option(
        "--vectors", flag_vectors, "precomputed vectors JSON (chunk_id -> floats)");

    auto* sub_compare =
        app.add_subcommand("compare", "pairwise corpus similarity reports");
    sub_compare->fallthrough();
    std::string flag_cmp_phase, flag_a, flag_b;
    bool flag_project = false;
    auto* opt_cmp_phase = sub_compare->add_option(
        "--phase", flag_cmp_phase, "restrict to one phase (animal|clinical|testing|other)");
    auto* opt_a = sub_compare->add_option("--a", flag_a, "first country");
    auto* opt_b = sub_compare->add_option("--b", flag_b, "second country");
    sub_compare->add_flag("--project", flag_project,
                          "also write 2D projections of chunk vectors");

    auto* sub_lda = app.add_subcommand("lda", "fit a topic model and term heatmap");
    sub_lda->fallthrough();
    std::string flag_lda_country, flag_k;
    int flag_lda_year = 0, flag_top_terms = 0;
    auto* opt_lda_country =
        sub_lda->add_option("--country", flag_lda_country, "restrict to one country");
    auto* opt_lda_year =
        sub_lda->add_option("--year", flag_lda_year, "restrict to one year");
    auto* opt_k =
        sub_lda->add_option("--k", flag_k, "topic count, or 'auto' to pick from the grid");
    auto* opt_top_terms = sub_lda->add_option("--top-terms", flag_top_terms,
                                              "terms in the frequency heatmap");

    auto* sub_ner = app.add_subcommand("ner", "recognize named entities and tabulate them");
    sub_ner->fallthrough();
    std::string flag_gazetteers, flag_ner_country;
    int flag_ner_year = 0, flag_ner_top = 0;
    auto* opt_gazetteers =
        sub_ner->add_option("--gazetteers", flag_gazetteers, "gazetteer directory");
    auto* opt_ner_country = sub_ner->add_option("--country", flag_ner_country,
                                                "distribution filter country");
    auto* opt_ner_year =
        sub_ner->add_option("--year", flag_ner_year, "distribution filter year");
    auto* opt_ner_top =
        sub_ner->add_option("--top", flag_ner_top, "top surfaces per year");

    auto* sub_trend = app.add_subcommand("trend", "exact-phrase frequency by year");
    sub_trend->fallthrough();
    std::string flag_term;
    std::vector<std::string> flag_trend_countries;
    auto* opt_term = sub_trend->add_option("--term", flag_term, "phrase to count");
    auto* opt_trend_countries = sub_trend->add_option(
        "--country", flag_trend_countries, "country series (repeatable; default all)");

    auto* sub_summarize =
        app.add_subcommand("summarize", "extractive summaries per phase corpus");
    sub_summarize->fallthrough();
    std::string flag_sum_phase, flag_sum_country;
    int flag_sum_k = 0;
    double flag_lambda = 0.0;
    auto* opt_sum_phase =
        sub_summarize->add_option("--phase", flag_sum_phase, "restrict to one phase");
    auto* opt_sum_country = sub_summarize->add_option("--country", flag_sum_country,
                                                      "restrict to one country");
    auto* opt_sum_k =
        sub_summarize->add_option("--k", flag_sum_k, "sentences per summary");
    auto* opt_lambda = sub_summarize->add_option(
        "--lambda", flag_lambda, "relevance/diversity balance in [0,1]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help/--version
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        std::cerr << "error: " << msg << "\n";
        return 3;
    }

    try {
        RunConfig cfg;
        if (opt_config->count()) apply_config_file(cfg, flag_config);
        if (cfg.workspace.empty())
            if (const char* env = std::getenv("REGULENS_WORKSPACE")) cfg.workspace = env;
        if (opt_workspace->count()) cfg.workspace = flag_workspace;
        if (opt_seed->count()) cfg.seed = flag_seed;
        if (opt_out->count()) cfg.out = flag_out;
        if (cfg.workspace.empty())
            throw config_error(
                "workspace not set (use --workspace, config, or REGULENS_WORKSPACE)");
        if (cfg.out.empty()) cfg.out = (fs::path(cfg.workspace) / "out").string();

        if (opt_manifest->count()) cfg.manifest = flag_manifest;
        if (opt_chunk_size->count()) cfg.chunk_size = flag_chunk_size;
        if (opt_backend->count()) cfg.backend.kind = flag_backend;
        if (opt_dim->count()) cfg.backend.dim = flag_dim;
        if (opt_vectors->count()) cfg.backend.vectors = flag_vectors;
        if (opt_k->count()) {
            if (flag_k == "auto") {
                cfg.lda.K = 0;
            } else {
                try {
                    cfg.lda.K = std::stoi(flag_k);
                } catch (const std::exception&) {
                    throw config_error("lda: --k must be an integer or 'auto'");
                }
            }
        }
        if (opt_top_terms->count()) cfg.lda_top_terms = flag_top_terms;
        if (opt_gazetteers->count()) cfg.gazetteers = flag_gazetteers;
        if (opt_ner_top->count()) cfg.ner_top_n = flag_ner_top;
        if (opt_term->count()) cfg.trend_term = flag_term;
        if (opt_trend_countries->count()) cfg.trend_countries = flag_trend_countries;
        if (opt_sum_k->count()) cfg.summary.k_sentences = flag_sum_k;
        if (opt_lambda->count()) cfg.summary.lambda = flag_lambda;

        auto opt_str = [](const CLI::Option* o,
                          const std::string& v) -> std::optional<std::string> {
            return o->count() ? std::optional<std::string>(v) : std::nullopt;
        };
        auto opt_int = [](const CLI::Option* o, int v) -> std::optional<int> {
            return o->count() ? std::optional<int>(v) : std::nullopt;
        };
        auto jnull = [](const auto& opt) -> json {
            if (opt) return json(*opt);
            return json(nullptr);
        };

        Workspace ws{fs::path(cfg.workspace)};
        fs::create_directories(ws.root);
        fs::create_directories(cfg.out);
        WorkspaceLock lock(ws.lock_path());

        const CLI::App* sub = app.get_subcommands().front();
        const std::string name = sub->get_name();
        json args = json::object();
        if (name == "compare") {
            args = {{"phase", jnull(opt_str(opt_cmp_phase, flag_cmp_phase))},
                    {"a", jnull(opt_str(opt_a, flag_a))},
                    {"b", jnull(opt_str(opt_b, flag_b))},
                    {"project", flag_project}};
        } else if (name == "lda") {
            args = {{"country", jnull(opt_str(opt_lda_country, flag_lda_country))},
                    {"year", jnull(opt_int(opt_lda_year, flag_lda_year))}};
        } else if (name == "ner") {
            args = {{"country", jnull(opt_str(opt_ner_country, flag_ner_country))},
                    {"year", jnull(opt_int(opt_ner_year, flag_ner_year))}};
        } else if (name == "summarize") {
            args = {{"phase", jnull(opt_str(opt_sum_phase, flag_sum_phase))},
                    {"country", jnull(opt_str(opt_sum_country, flag_sum_country))}};
        }
        detail::write_file(fs::path(cfg.out) / ("config_" + name + ".json"),
                           config_json(cfg, name, args).dump(2) + "\n");

        if (name == "ingest") {
            cmd_ingest(cfg, ws);
        } else if (name == "segment") {
            cmd_segment(cfg, ws);
        } else if (name == "embed") {
            cmd_embed(cfg, ws);
        } else if (name == "compare") {
            cmd_compare(cfg, ws, opt_str(opt_cmp_phase, flag_cmp_phase),
                        opt_str(opt_a, flag_a), opt_str(opt_b, flag_b),
                        flag_project);
        } else if (name == "lda") {
            cmd_lda(cfg, ws, opt_str(opt_lda_country, flag_lda_country),
                    opt_int(opt_lda_year, flag_lda_year));
        } else if (name == "ner") {
            cmd_ner(cfg, ws, opt_str(opt_ner_country, flag_ner_country),
                    opt_int(opt_ner_year, flag_ner_year));
        } else if (name == "trend") {
            cmd_trend(cfg, ws);
        } else if (name == "summarize") {
            cmd_summarize(cfg, ws, opt_str(opt_sum_phase, flag_sum_phase),
                          opt_str(opt_sum_country, flag_sum_country));
        }
        return 0;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const stage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
