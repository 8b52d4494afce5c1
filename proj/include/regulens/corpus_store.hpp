#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "regulens/corpus_key.hpp"
#include "regulens/errors.hpp"
#include "regulens/textproc.hpp"
#include "regulens/utf8.hpp"

namespace regulens {

struct Document {
    std::string doc_id;
    std::string country;
    int year = 0;
    std::string title;
    std::string raw_text;
    std::string source_path;
};

struct DocumentHeader {
    std::string doc_id;
    std::string country;
    int year = 0;
    std::string title;
};

struct IngestStats {
    std::size_t docs_loaded = 0;
    std::size_t tokens_estimated = 0;
    std::map<std::string, std::size_t> per_country;
};

struct IngestOptions {
    int year_min = 2000;
    int year_max = 2100;
};

// All pipeline artifacts live under one workspace directory.
struct Workspace {
    std::filesystem::path root;

    std::filesystem::path documents_path() const { return root / "documents.jsonl"; }
    std::filesystem::path index_path() const { return root / "index.json"; }
    std::filesystem::path chunks_path() const { return root / "chunks.jsonl"; }
    std::filesystem::path vectors_path() const { return root / "vectors.bin"; }
    std::filesystem::path tfidf_path() const { return root / "tfidf.json"; }
    std::filesystem::path mentions_path() const { return root / "mentions.jsonl"; }
    std::filesystem::path lock_path() const { return root / ".lock"; }
};

namespace detail {

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("path not found: " + path.string());
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write: " + path.string());
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
}

} // namespace detail

// Parse and validate the whole manifest before writing anything: a duplicate
// doc_id or unreadable file rejects the entire ingest.
inline IngestStats ingest_manifest(const std::filesystem::path& manifest_path,
                                   const Workspace& ws,
                                   const IngestOptions& opts = {}) {
    using nlohmann::json;
    std::string manifest = detail::read_file(manifest_path);
    auto base_dir = manifest_path.parent_path();

    std::vector<Document> docs;
    std::map<std::string, bool> seen_ids;
    int line_no = 0;
    for (const auto& line : split_lines(manifest)) {
        ++line_no;
        if (trim(line).empty()) continue;
        json entry;
        try {
            entry = json::parse(line);
        } catch (const json::exception& e) {
            throw std::runtime_error("manifest line " + std::to_string(line_no) +
                                     ": " + e.what());
        }
        auto where = "manifest line " + std::to_string(line_no);
        if (!entry.is_object() || !entry.contains("doc_id") ||
            !entry.contains("country") || !entry.contains("year") ||
            !entry.contains("title") || !entry.contains("path"))
            throw std::runtime_error(
                where + ": expected keys doc_id, country, year, title, path");

        Document d;
        try {
            d.doc_id = entry.at("doc_id").get<std::string>();
            d.country = normalize_country(entry.at("country").get<std::string>());
            d.year = entry.at("year").get<int>();
            d.title = entry.at("title").get<std::string>();
            d.source_path = entry.at("path").get<std::string>();
        } catch (const json::exception& e) {
            throw std::runtime_error(where + ": " + e.what());
        }
        if (d.doc_id.empty())
            throw std::runtime_error(where + ": empty doc_id");
        if (d.country.empty())
            throw std::runtime_error(where + ": empty country");
        if (d.year < opts.year_min || d.year > opts.year_max)
            throw std::runtime_error(where + ": year " + std::to_string(d.year) +
                                     " outside [" + std::to_string(opts.year_min) +
                                     ", " + std::to_string(opts.year_max) + "]");
        if (seen_ids.count(d.doc_id))
            throw std::runtime_error("duplicate doc_id: " + d.doc_id);
        seen_ids[d.doc_id] = true;

        std::filesystem::path p(d.source_path);
        if (p.is_relative()) p = base_dir / p;
        d.raw_text = detail::read_file(p);
        if (!utf8_valid(d.raw_text))
            throw std::runtime_error("invalid UTF-8 in: " + p.string());
        docs.push_back(std::move(d));
    }

    IngestStats stats;
    stats.docs_loaded = docs.size();
    std::filesystem::create_directories(ws.root);

    std::string jsonl;
    int year_lo = 0, year_hi = 0;
    for (const auto& d : docs) {
        stats.tokens_estimated += tokenize(d.raw_text).size();
        ++stats.per_country[d.country];
        if (year_lo == 0 || d.year < year_lo) year_lo = d.year;
        if (d.year > year_hi) year_hi = d.year;
        json rec = {{"doc_id", d.doc_id},   {"country", d.country},
                    {"year", d.year},       {"title", d.title},
                    {"raw_text", d.raw_text}, {"source_path", d.source_path}};
        jsonl += rec.dump();
        jsonl += '\n';
    }
    detail::write_file(ws.documents_path(), jsonl);

    std::vector<DocumentHeader> headers;
    for (const auto& d : docs)
        headers.push_back({d.doc_id, d.country, d.year, d.title});
    std::sort(headers.begin(), headers.end(), [](const auto& a, const auto& b) {
        return std::tie(a.country, a.year, a.doc_id) <
               std::tie(b.country, b.year, b.doc_id);
    });
    json index;
    index["total_documents"] = stats.docs_loaded;
    index["tokens_estimated"] = stats.tokens_estimated;
    index["year_min"] = year_lo;
    index["year_max"] = year_hi;
    index["per_country"] = stats.per_country;
    index["docs"] = json::array();
    for (const auto& h : headers)
        index["docs"].push_back({{"doc_id", h.doc_id},
                                 {"country", h.country},
                                 {"year", h.year},
                                 {"title", h.title}});
    detail::write_file(ws.index_path(), index.dump(2) + "\n");
    return stats;
}

struct DocumentFilter {
    std::optional<std::string> country;
    std::optional<int> year;
};

inline std::vector<DocumentHeader> list_documents(const Workspace& ws,
                                                  const DocumentFilter& f = {}) {
    using nlohmann::json;
    json index = json::parse(detail::read_file(ws.index_path()));
    std::vector<DocumentHeader> out;
    for (const auto& rec : index.at("docs")) {
        DocumentHeader h{rec.at("doc_id").get<std::string>(),
                         rec.at("country").get<std::string>(),
                         rec.at("year").get<int>(),
                         rec.at("title").get<std::string>()};
        if (f.country && h.country != normalize_country(*f.country)) continue;
        if (f.year && h.year != *f.year) continue;
        out.push_back(std::move(h));
    }
    return out; // index is stored pre-sorted by (country, year, doc_id)
}

// Documents in manifest order.
inline std::vector<Document> load_documents(const Workspace& ws) {
    using nlohmann::json;
    std::string content = detail::read_file(ws.documents_path());
    std::vector<Document> docs;
    for (const auto& line : split_lines(content)) {
        if (trim(line).empty()) continue;
        json rec = json::parse(line);
        docs.push_back({rec.at("doc_id").get<std::string>(),
                        rec.at("country").get<std::string>(),
                        rec.at("year").get<int>(),
                        rec.at("title").get<std::string>(),
                        rec.at("raw_text").get<std::string>(),
                        rec.at("source_path").get<std::string>()});
    }
    return docs;
}

struct YearlyCount {
    std::string country;
    int year = 0;
    std::size_t documents = 0;
};

inline std::vector<YearlyCount> yearly_counts(const Workspace& ws) {
    std::map<std::pair<std::string, int>, std::size_t> counts;
    for (const auto& h : list_documents(ws)) ++counts[{h.country, h.year}];
    std::vector<YearlyCount> out;
    for (const auto& [key, n] : counts) out.push_back({key.first, key.second, n});
    return out;
}

// Observed [year_min, year_max] of the ingested corpus, for dense year axes.
inline std::pair<int, int> workspace_year_range(const Workspace& ws) {
    using nlohmann::json;
    json index = json::parse(detail::read_file(ws.index_path()));
    return {index.at("year_min").get<int>(), index.at("year_max").get<int>()};
}

} // namespace regulens
