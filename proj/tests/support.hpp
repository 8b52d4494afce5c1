#pragma once

// Shared test helpers: temp directories and the 30-document fixture corpus
// (3 countries x 2 years x 5 docs) reused across suites.

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

namespace testsupport {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;

    TempDir() {
        auto base = fs::temp_directory_path();
        static std::mt19937_64 gen(std::random_device{}());
        for (int tries = 0; tries < 100; ++tries) {
            auto candidate = base / ("regulens_test_" + std::to_string(gen()));
            std::error_code ec;
            if (fs::create_directory(candidate, ec)) {
                path = candidate;
                return;
            }
        }
        throw std::runtime_error("cannot create temp dir");
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

inline void write_file(const fs::path& p, const std::string& content) {
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

inline std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

inline const std::vector<std::string>& fixture_countries() {
    static const std::vector<std::string> c = {"CN", "EU", "USA"};
    return c;
}

inline const std::vector<int>& fixture_years() {
    static const std::vector<int> y = {2021, 2022};
    return y;
}

// Deterministic document text. Each document carries one sentence per
// lifecycle phase, shared regulatory filler, country-marker vocabulary, and
// a repeated page-header line (boilerplate). "real world evidence" is
// planted in USA 2022 documents only.
inline std::string fixture_doc_text(const std::string& country, int year,
                                    int index) {
    std::string marker;
    if (country == "CN") marker = "provincial filing catalogue";
    else if (country == "EU") marker = "notified conformity vigilance";
    else marker = "premarket submission clearance";

    std::string header = country + " Medical Device Compendium";
    std::string text;
    for (int page = 0; page < 3; ++page) {
        text += header + "\n\n";
        if (page == 0) {
            text += "Animal testing of devices preceded market approval in " +
                    std::to_string(year) + ".\n";
            text += "The clinical evaluation enrolled patients at " + marker +
                    " sites.\n";
        } else if (page == 1) {
            text += "Testing methods and calibration follow national "
                    "standards for " + marker + " review.\n";
            text += "Manufacturers shall register devices with the competent "
                    "authority before distribution.\n";
        } else {
            text += "The authority publishes guidance on " + marker +
                    " obligations every cycle.\n";
            text += "Surveillance reports describe corrective actions and "
                    "recall decisions in document " + std::to_string(index) +
                    ".\n";
            if (country == "USA" && year == 2022)
                text += "Real world evidence supports post-market decisions "
                        "about device safety.\n";
        }
    }
    return text;
}

// Writes text files plus a manifest; returns the manifest path.
inline fs::path write_fixture_corpus(const fs::path& dir) {
    std::string manifest;
    for (const auto& country : fixture_countries()) {
        for (int year : fixture_years()) {
            for (int i = 0; i < 5; ++i) {
                std::string doc_id = country + "-" + std::to_string(year) +
                                     "-" + std::to_string(i);
                std::string rel = "docs/" + doc_id + ".txt";
                write_file(dir / rel, fixture_doc_text(country, year, i));
                nlohmann::json entry = {
                    {"doc_id", doc_id},   {"country", country},
                    {"year", year},       {"title", "Regulation " + doc_id},
                    {"path", rel},
                };
                manifest += entry.dump() + "\n";
            }
        }
    }
    fs::path manifest_path = dir / "manifest.jsonl";
    write_file(manifest_path, manifest);
    return manifest_path;
}

} // namespace testsupport
