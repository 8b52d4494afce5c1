#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <string>
#include <vector>

#include "regulens/default_lists.hpp"
#include "regulens/porter.hpp"
#include "regulens/textproc.hpp"

using namespace regulens;

namespace {

std::vector<std::pair<std::string, std::string>> load_porter_fixture() {
    std::ifstream in(std::string(REGULENS_FIXTURE_DIR) + "/porter_sample.tsv");
    REQUIRE(in.good());
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto tab = line.find('\t');
        REQUIRE(tab != std::string::npos);
        pairs.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
    return pairs;
}

} // namespace

TEST_CASE("porter matches frozen reference sample") {
    auto pairs = load_porter_fixture();
    REQUIRE(pairs.size() >= 100);
    for (const auto& [word, want] : pairs) {
        INFO(word);
        CHECK(porter_stem(word) == want);
    }
}

TEST_CASE("porter definitional examples") {
    // Anchors from the published algorithm description, independent of the
    // fixture file.
    CHECK(porter_stem("caresses") == "caress");
    CHECK(porter_stem("ponies") == "poni");
    CHECK(porter_stem("ties") == "ti");
    CHECK(porter_stem("cats") == "cat");
    CHECK(porter_stem("feed") == "feed");
    CHECK(porter_stem("agreed") == "agre");
    CHECK(porter_stem("plastered") == "plaster");
    CHECK(porter_stem("motoring") == "motor");
    CHECK(porter_stem("sing") == "sing");
    CHECK(porter_stem("hopping") == "hop");
    CHECK(porter_stem("falling") == "fall");
    CHECK(porter_stem("filing") == "file");
    CHECK(porter_stem("happy") == "happi");
    CHECK(porter_stem("sky") == "sky");
    CHECK(porter_stem("relational") == "relat");
    CHECK(porter_stem("conditional") == "condit");
    CHECK(porter_stem("rational") == "ration");
    CHECK(porter_stem("triplicate") == "triplic");
    CHECK(porter_stem("formative") == "form");
    CHECK(porter_stem("goodness") == "good");
    CHECK(porter_stem("revival") == "reviv");
    CHECK(porter_stem("adjustment") == "adjust");
    CHECK(porter_stem("adoption") == "adopt");
    CHECK(porter_stem("probate") == "probat");
    CHECK(porter_stem("rate") == "rate");
    CHECK(porter_stem("cease") == "ceas");
    CHECK(porter_stem("controlling") == "control");
    CHECK(porter_stem("generalizations") == "gener");
    CHECK(porter_stem("oscillators") == "oscil");
}

TEST_CASE("porter leaves non-letter tokens alone") {
    CHECK(porter_stem("820") == "820");
    CHECK(porter_stem("post-market") == "post-market");
    CHECK(porter_stem("don't") == "don't");
    CHECK(porter_stem("") == "");
}

TEST_CASE("tokenize rules") {
    CHECK(tokenize("post-market surveillance (PMCF)!") ==
          std::vector<std::string>{"post-market", "surveillance", "PMCF"});
    CHECK(tokenize("") == std::vector<std::string>{});
    CHECK(tokenize("21 CFR 820.30") ==
          std::vector<std::string>{"21", "CFR", "820", "30"});
    CHECK(tokenize("it's a co- op") ==
          std::vector<std::string>{"it's", "a", "co", "op"});
    CHECK(tokenize("--x--") == std::vector<std::string>{"x"});
}

TEST_CASE("tokenize properties") {
    const std::string samples[] = {
        "Devices are safe. Trials follow.",
        "post-market surveillance (PMCF)! 21 CFR 820.30",
        "  \t\n ", "a", "...", "Dose is 0.5 mg daily — twice",
    };
    for (const auto& s : samples) {
        auto toks = tokenize(s);
        std::size_t total = 0;
        for (const auto& t : toks) {
            CHECK(!t.empty());
            total += t.size();
        }
        CHECK(total <= s.size());
    }
}

TEST_CASE("sentence segmentation rules") {
    auto s1 = segment_sentences("Devices are safe. Trials follow.");
    REQUIRE(s1.size() == 2);
    CHECK(s1[0].text == "Devices are safe.");
    CHECK(s1[1].text == "Trials follow.");
    CHECK(s1[0].index == 0);
    CHECK(s1[1].index == 1);

    auto s2 = segment_sentences("See Fig. 3 for details.");
    REQUIRE(s2.size() == 1);

    auto s3 = segment_sentences("Dose is 0.5 mg daily.");
    REQUIRE(s3.size() == 1);

    auto s4 = segment_sentences("Is it safe? Yes! See e.g. Annex II.");
    REQUIRE(s4.size() == 3);
    CHECK(s4[2].text == "See e.g. Annex II.");

    auto s5 = segment_sentences("Trials ended. but not reported");
    REQUIRE(s5.size() == 1); // lowercase continuation never splits
}

TEST_CASE("sentence segmentation conserves non-whitespace characters") {
    const std::string samples[] = {
        "Devices are safe. Trials follow. See Fig. 3 for details.",
        "One.  Two!   Three? Four",
        "No terminal punctuation here",
        "",
    };
    auto squash = [](std::string_view s) {
        std::string out;
        for (char c : s)
            if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
        return out;
    };
    for (const auto& s : samples) {
        std::string joined;
        for (const auto& sent : segment_sentences(s)) joined += sent.text;
        CHECK(squash(joined) == squash(s));
    }
}

TEST_CASE("strip_boilerplate") {
    std::vector<std::string> lines;
    for (int page = 0; page < 10; ++page) {
        lines.push_back("CONFIDENTIAL — Page Header");
        lines.push_back("Body text " + std::to_string(page));
        lines.push_back("");
    }
    std::string cleaned = strip_boilerplate(lines);
    CHECK(cleaned.find("CONFIDENTIAL") == std::string::npos);
    CHECK(cleaned.find("Body text 0") != std::string::npos);
    CHECK(cleaned.find("Body text 9") != std::string::npos);

    // Repeated exactly twice: below the default threshold, retained.
    std::vector<std::string> twice = {"Header", "body a", "Header", "body b"};
    std::string kept = strip_boilerplate(twice);
    CHECK(kept.find("Header") != std::string::npos);

    // No repeats: unchanged modulo blank-line collapsing.
    std::vector<std::string> plain = {"alpha", "", "", "beta"};
    CHECK(strip_boilerplate(plain) == "alpha\n\nbeta");
    CHECK(strip_boilerplate({}) == "");
}

TEST_CASE("normalize pipeline") {
    CHECK(normalize({"The", "Regulations"}) == std::vector<std::string>{"regul"});
    CHECK(normalize({"and", "in", "the"}) == std::vector<std::string>{});
    CHECK(normalize({"FDA"}) == std::vector<std::string>{"fda"});

    NormalizeOptions no_stem;
    no_stem.stemming = false;
    CHECK(normalize({"The", "Regulations"}, no_stem) ==
          std::vector<std::string>{"regulations"});
}

TEST_CASE("normalize without stemming is idempotent") {
    NormalizeOptions no_stem;
    no_stem.stemming = false;
    const std::string samples[] = {
        "The Regulations Were Approved In 2014 by the FDA",
        "post-market surveillance and data analysis",
    };
    for (const auto& s : samples) {
        auto once = normalize(tokenize(s), no_stem);
        auto twice = normalize(once, no_stem);
        CHECK(once == twice);
    }
}

TEST_CASE("default lists match shipped data files") {
    auto stop_file = load_list_file(std::string(REGULENS_DATA_DIR) + "/stopwords.txt");
    CHECK(stop_file.size() == 175);
    CHECK(stop_file == default_stopwords());
    CHECK(default_stopword_set().count("the") == 1);
    CHECK(default_stopword_set().count("and") == 1);
    CHECK(default_stopword_set().count("in") == 1);

    auto abbr_file =
        load_list_file(std::string(REGULENS_DATA_DIR) + "/abbreviations.txt");
    CHECK(abbr_file == default_abbreviations());
}

TEST_CASE("utf8 validation") {
    CHECK(utf8_valid("plain ascii"));
    CHECK(utf8_valid("café — résumé"));
    CHECK(!utf8_valid("\xff\xfe"));
    CHECK(!utf8_valid("\xc3"));           // truncated sequence
    CHECK(!utf8_valid("\xc0\xaf"));       // overlong
    CHECK(!utf8_valid("\xed\xa0\x80"));   // surrogate
}
