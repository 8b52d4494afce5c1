#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <fcntl.h>
#include <sys/file.h>
#include <sys/wait.h>
#include <unistd.h>

#include <json.hpp>

#include "support.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string quoted(const fs::path& p) { return "'" + p.string() + "'"; }

// Drives the real binary through the shell, capturing both streams.
CliResult run_cli(const std::string& args, const fs::path& scratch) {
    fs::path so = scratch / "stdout.txt";
    fs::path se = scratch / "stderr.txt";
    std::string cmd = std::string(REGULENS_CLI_PATH) + " " + args + " >" +
                      quoted(so) + " 2>" + quoted(se);
    int rc = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = testsupport::read_file(so);
    r.err = testsupport::read_file(se);
    return r;
}

std::string gazetteer_dir() { return std::string(REGULENS_DATA_DIR) + "/gazetteers"; }

// The eight stages on the fixture corpus with a fixed seed.
void run_pipeline(const fs::path& ws, const fs::path& manifest,
                  const fs::path& scratch) {
    std::string base = " --workspace " + quoted(ws) + " --seed 42";
    auto step = [&](const std::string& args) {
        auto r = run_cli(args + base, scratch);
        INFO(args << " -> " << r.err);
        REQUIRE(r.code == 0);
    };
    step("ingest --manifest " + quoted(manifest));
    step("segment");
    step("embed --dim 256");
    step("compare --project");
    step("lda --country CN --k 3");
    step("ner --gazetteers '" + gazetteer_dir() + "'");
    step("trend --term 'real world evidence'");
    step("summarize");
}

std::map<std::string, std::string> snapshot_tree(const fs::path& root) {
    std::map<std::string, std::string> snap;
    for (const auto& entry : fs::recursive_directory_iterator(root))
        if (entry.is_regular_file())
            snap[fs::relative(entry.path(), root).string()] =
                testsupport::read_file(entry.path());
    return snap;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    return lines;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

} // namespace

TEST_CASE("staging rules gate each command") {
    testsupport::TempDir ws, scratch;
    std::string base = " --workspace " + quoted(ws.path);

    auto expect_stage = [&](const std::string& args, const std::string& stage) {
        auto r = run_cli(args + base, scratch.path);
        INFO(args << " -> " << r.err);
        CHECK(r.code == 2);
        CHECK(r.err == "error: run `" + stage + "` first\n");
    };
    expect_stage("segment", "ingest");
    expect_stage("embed", "segment");
    expect_stage("compare", "embed");
    expect_stage("lda --k 3", "ingest");
    expect_stage("ner", "ingest");
    expect_stage("trend --term recall", "ingest");
    expect_stage("summarize", "ingest");

    testsupport::TempDir corpus;
    auto manifest = testsupport::write_fixture_corpus(corpus.path);
    REQUIRE(run_cli("ingest --manifest " + quoted(manifest) + base, scratch.path)
                .code == 0);
    expect_stage("summarize", "embed"); // documents alone are not enough
    expect_stage("compare", "embed");
}

TEST_CASE("bad configuration exits 3") {
    testsupport::TempDir ws, scratch, corpus;
    auto manifest = testsupport::write_fixture_corpus(corpus.path);
    std::string base = " --workspace " + quoted(ws.path);

    auto expect_config = [&](const std::string& args, const std::string& needle) {
        auto r = run_cli(args + base, scratch.path);
        INFO(args << " -> " << r.err);
        CHECK(r.code == 3);
        CHECK(r.err.find(needle) != std::string::npos);
        CHECK(r.err.substr(0, 7) == "error: ");
        CHECK(lines_of(r.err).size() == 1);
    };

    expect_config("ingest", "manifest required");
    expect_config("trend", "term required");
    expect_config("lda --k bananas", "--k must be an integer or 'auto'");
    expect_config("compare --a CN", "--a and --b must be given together");
    expect_config("compare --phase larval", "unknown phase: larval");

    // parse errors from the flag layer use the same code
    auto r = run_cli("bogus" + base, scratch.path);
    CHECK(r.code == 3);
    r = run_cli("ingest --no-such-flag" + base, scratch.path);
    CHECK(r.code == 3);

    // no workspace from any source
    r = run_cli("ner", scratch.path);
    CHECK(r.code == 3);
    CHECK(r.err.find("workspace not set") != std::string::npos);

    // malformed config file
    testsupport::write_file(scratch.path / "broken.json", "{nope");
    r = run_cli("ner --config " + quoted(scratch.path / "broken.json") + base,
                scratch.path);
    CHECK(r.code == 3);
    CHECK(r.err.find("config:") != std::string::npos);

    // backend validation happens once the stage gate is passed
    REQUIRE(run_cli("ingest --manifest " + quoted(manifest) + base, scratch.path)
                .code == 0);
    REQUIRE(run_cli("segment" + base, scratch.path).code == 0);
    expect_config("embed --backend alien", "unknown kind: alien");

    r = run_cli("--help", scratch.path);
    CHECK(r.code == 0);
    CHECK(r.out.find("ingest") != std::string::npos);
}

TEST_CASE("fixture pipeline emits the documented artifacts") {
    testsupport::TempDir ws, scratch, corpus;
    auto manifest = testsupport::write_fixture_corpus(corpus.path);
    run_pipeline(ws.path, manifest, scratch.path);

    fs::path out = ws.path / "out";
    for (const char* name :
         {"ingest.json", "segment.json", "embed.json", "compare_animal.csv",
          "compare_animal.json", "compare_clinical.csv", "compare_testing.csv",
          "compare_other.csv", "projection_clinical.csv", "lda_model.json",
          "lda_heatmap.csv", "lda_heatmap.svg", "entity_distribution.csv",
          "top_entities.csv", "trend.csv", "trend.svg", "summaries.json",
          "config_ingest.json", "config_segment.json", "config_embed.json",
          "config_compare.json", "config_lda.json", "config_ner.json",
          "config_trend.json", "config_summarize.json"}) {
        INFO(name);
        CHECK(fs::exists(out / name));
    }
    // identical chunks across countries leave the animal phase rank-1, so its
    // projection is skipped rather than fabricated
    CHECK_FALSE(fs::exists(out / "projection_animal.csv"));

    auto compare_lines = lines_of(testsupport::read_file(out / "compare_clinical.csv"));
    REQUIRE(compare_lines.size() == 4); // header + 3 cross-country pairs
    CHECK(compare_lines[0] ==
          "key_a,key_b,n_pairs,mean_similarity,std_similarity,mean_distance,closest");
    std::size_t closest = 0;
    for (std::size_t i = 1; i < compare_lines.size(); ++i) {
        auto fields = split_csv_line(compare_lines[i]);
        REQUIRE(fields.size() == 7);
        CHECK(fields[2] == "100"); // 10 chunks per country, years pooled
        if (fields[6] == "true") ++closest;
    }
    CHECK(closest == 1);

    auto trend_lines = lines_of(testsupport::read_file(out / "trend.csv"));
    REQUIRE(trend_lines.size() == 7); // header + 3 countries x 2 years
    CHECK(trend_lines[0] == "term,country,year,count");
    for (std::size_t i = 1; i < trend_lines.size(); ++i) {
        auto fields = split_csv_line(trend_lines[i]);
        bool planted = fields[1] == "USA" && fields[2] == "2022";
        CHECK(fields[3] == (planted ? "5" : "0"));
    }

    auto dist_lines = lines_of(testsupport::read_file(out / "entity_distribution.csv"));
    REQUIRE(dist_lines.size() >= 2);
    CHECK(dist_lines[0] == "category,count,percentage");
    double pct_sum = 0.0;
    for (std::size_t i = 1; i < dist_lines.size(); ++i)
        pct_sum += std::stod(split_csv_line(dist_lines[i])[2]);
    CHECK(pct_sum == Catch::Approx(100.0).margin(0.1));

    auto model = json::parse(testsupport::read_file(out / "lda_model.json"));
    CHECK(model.at("config").at("K").get<int>() == 3);
    CHECK(model.at("topics").size() == 3);

    auto summaries = json::parse(testsupport::read_file(out / "summaries.json"));
    REQUIRE(summaries.is_array());
    REQUIRE(!summaries.empty());
    bool clinical_cn = false;
    for (const auto& entry : summaries) {
        if (entry.at("corpus_key").get<std::string>() == "Clinical_CN")
            clinical_cn = true;
        auto sentences = entry.at("sentences");
        CHECK(!sentences.empty());
        CHECK(sentences.size() <= 5);
        for (const auto& s : sentences) {
            CHECK(!s.at("text").get<std::string>().empty());
            double score = s.at("score").get<double>();
            CHECK(score >= -1.0);
            CHECK(score <= 1.0);
        }
    }
    CHECK(clinical_cn);

    for (const char* name : {"trend.svg", "lda_heatmap.svg"}) {
        auto svg = testsupport::read_file(out / name);
        CHECK(svg.rfind("<?xml", 0) == 0);
        CHECK(svg.find("</svg>") != std::string::npos);
    }
}

TEST_CASE("reruns overwrite with byte-identical artifacts") {
    testsupport::TempDir ws, scratch, corpus;
    auto manifest = testsupport::write_fixture_corpus(corpus.path);
    run_pipeline(ws.path, manifest, scratch.path);
    auto first = snapshot_tree(ws.path);
    run_pipeline(ws.path, manifest, scratch.path);
    auto second = snapshot_tree(ws.path);

    REQUIRE(first.size() == second.size());
    for (const auto& [path, content] : first) {
        INFO(path);
        REQUIRE(second.count(path) == 1);
        CHECK(second.at(path) == content);
    }
}

TEST_CASE("single-pair compare writes one report row") {
    testsupport::TempDir ws, scratch, corpus;
    auto manifest = testsupport::write_fixture_corpus(corpus.path);
    std::string base = " --workspace " + quoted(ws.path) + " --seed 42";
    REQUIRE(run_cli("ingest --manifest " + quoted(manifest) + base, scratch.path)
                .code == 0);
    REQUIRE(run_cli("segment" + base, scratch.path).code == 0);
    REQUIRE(run_cli("embed --dim 256" + base, scratch.path).code == 0);
    REQUIRE(run_cli("compare --phase animal --a CN --b USA" + base, scratch.path)
                .code == 0);

    auto lines = lines_of(
        testsupport::read_file(ws.path / "out" / "compare_animal.csv"));
    REQUIRE(lines.size() == 2);
    auto fields = split_csv_line(lines[1]);
    REQUIRE(fields.size() == 7);
    CHECK(fields[0] == "Animal_CN");
    CHECK(fields[1] == "Animal_USA");
    CHECK(fields[6] == "true"); // the only pair in its group

    // lowercase country spellings normalize the same way
    REQUIRE(run_cli("compare --phase animal --a ch --b usa" + base, scratch.path)
                .code == 0);
    auto again = lines_of(
        testsupport::read_file(ws.path / "out" / "compare_animal.csv"));
    CHECK(again == lines);

    auto r = run_cli("compare --a BR --b CN" + base, scratch.path);
    CHECK(r.code == 1);
    CHECK(r.err == "error: unknown country: BR\n");
}

TEST_CASE("workspace falls back to the environment") {
    testsupport::TempDir ws, scratch, corpus;
    auto manifest = testsupport::write_fixture_corpus(corpus.path);
    ::setenv("REGULENS_WORKSPACE", ws.path.string().c_str(), 1);
    auto r = run_cli("ingest --manifest " + quoted(manifest), scratch.path);
    ::unsetenv("REGULENS_WORKSPACE");
    REQUIRE(r.code == 0);
    CHECK(fs::exists(ws.path / "documents.jsonl"));
    CHECK(fs::exists(ws.path / "index.json"));
}

TEST_CASE("flags override the config file") {
    testsupport::TempDir ws, scratch, corpus;
    auto manifest = testsupport::write_fixture_corpus(corpus.path);
    std::string base = " --workspace " + quoted(ws.path);
    REQUIRE(run_cli("ingest --manifest " + quoted(manifest) + base, scratch.path)
                .code == 0);

    json cfg = {{"workspace", ws.path.string()},
                {"seed", 7},
                {"trend", {{"term", "recall"}}}};
    fs::path cfg_path = scratch.path / "run.json";
    testsupport::write_file(cfg_path, cfg.dump());

    // config alone: seed 7, term from config, workspace from config
    REQUIRE(run_cli("trend --config " + quoted(cfg_path), scratch.path).code == 0);
    auto echoed = json::parse(
        testsupport::read_file(ws.path / "out" / "config_trend.json"));
    CHECK(echoed.at("seed").get<int>() == 7);
    CHECK(echoed.at("trend").at("term").get<std::string>() == "recall");

    // flags win over the same config
    REQUIRE(run_cli("trend --config " + quoted(cfg_path) +
                        " --seed 42 --term safety",
                    scratch.path)
                .code == 0);
    echoed = json::parse(
        testsupport::read_file(ws.path / "out" / "config_trend.json"));
    CHECK(echoed.at("seed").get<int>() == 42);
    CHECK(echoed.at("trend").at("term").get<std::string>() == "safety");
}

TEST_CASE("workspace lock refuses a second writer") {
    testsupport::TempDir ws, scratch, corpus;
    auto manifest = testsupport::write_fixture_corpus(corpus.path);
    std::string base = " --workspace " + quoted(ws.path);
    REQUIRE(run_cli("ingest --manifest " + quoted(manifest) + base, scratch.path)
                .code == 0);

    int fd = ::open((ws.path / ".lock").c_str(), O_CREAT | O_RDWR, 0644);
    REQUIRE(fd >= 0);
    REQUIRE(::flock(fd, LOCK_EX | LOCK_NB) == 0);
    auto r = run_cli("trend --term recall" + base, scratch.path);
    CHECK(r.code == 1);
    CHECK(r.err.find("workspace locked") != std::string::npos);
    ::flock(fd, LOCK_UN);
    ::close(fd);

    CHECK(run_cli("trend --term recall" + base, scratch.path).code == 0);
}
