#include "doctest.h"

#include <random>

#include "stylokit/corpus.hpp"

using namespace stylokit;

TEST_CASE("parse_annotated reads tab-separated token triples") {
    Document doc = parse_annotated("le\tle\tDETdef\n", "d");
    REQUIRE(doc.tokens.size() == 1);
    CHECK(doc.tokens[0].form == "le");
    CHECK(*doc.tokens[0].lemma == "le");
    CHECK(*doc.tokens[0].pos == "DETdef");
    CHECK(doc.n_words == 1);
}

TEST_CASE("parse_annotated handles partial annotation") {
    Document doc = parse_annotated("entendre\nle\tle\nde\tde\tPRE\n", "d");
    REQUIRE(doc.tokens.size() == 3);
    CHECK(!doc.tokens[0].lemma);
    CHECK(!doc.tokens[0].pos);
    CHECK(doc.tokens[1].lemma == "le");
    CHECK(!doc.tokens[1].pos);
    CHECK(doc.tokens[2].pos == "PRE");
}

TEST_CASE("parse_annotated skips comments and blank lines") {
    Document doc = parse_annotated("# header\n\nle\tle\tDETdef\n\n", "d");
    CHECK(doc.tokens.size() == 1);
}

TEST_CASE("parse_annotated rejects degenerate input") {
    CHECK_THROWS_WITH(parse_annotated("", "d"), doctest::Contains("empty document"));
    CHECK_THROWS_WITH(parse_annotated("\n\n  \n", "d"), doctest::Contains("empty document"));
    CHECK_THROWS_WITH(parse_annotated("a\tb\tc\td\n", "d"), doctest::Contains("line 1"));
    CHECK_THROWS(parse_annotated("le\tle\tDET def\n", "d")); // whitespace in POS
}

TEST_CASE("parse_annotated counts 1000 lines as 1000 words") {
    std::string content;
    for (int i = 0; i < 1000; ++i)
        content += "mot\n";
    CHECK(parse_annotated(content, "d").n_words == 1000);
}

TEST_CASE("punctuation POS is excluded from the word count by default") {
    std::string content = "le\tle\tDETdef\n.\t.\tPONfrt\nroi\troi\tNOMcom\n";
    CHECK(parse_annotated(content, "d").n_words == 2);
    CorpusConfig cfg;
    cfg.count_punctuation = true;
    CHECK(parse_annotated(content, "d", cfg).n_words == 3);
}

TEST_CASE("parse_raw collapses whitespace and tokenizes") {
    Document doc = parse_raw("Entendre  la\nglorieuse", "d");
    CHECK(*doc.raw_text == "Entendre la glorieuse");
    CHECK(doc.tokens.size() == 3);
    CHECK(doc.n_words == 3);

    Document one = parse_raw("a", "d");
    CHECK(*one.raw_text == "a");
    CHECK(one.n_words == 1);

    CHECK_THROWS(parse_raw("  \n ", "d"));
}

TEST_CASE("raw n_words equals space-separated tokens of the normalized text") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::string text;
        int words = 1 + static_cast<int>(rng() % 30);
        for (int w = 0; w < words; ++w) {
            for (int c = 0; c < 1 + static_cast<int>(rng() % 6); ++c)
                text.push_back(static_cast<char>('a' + rng() % 26));
            for (int s = 0; s < 1 + static_cast<int>(rng() % 3); ++s)
                text.push_back("  \n\t"[rng() % 4]);
        }
        Document doc = parse_raw(text, "d");
        size_t spaces = 0;
        for (char c : *doc.raw_text)
            if (c == ' ')
                ++spaces;
        CHECK(doc.n_words == spaces + 1);
        CHECK(doc.n_words == static_cast<size_t>(words));
    }
}

TEST_CASE("parse_label binds the 7-field underscore convention") {
    auto label = parse_label("29_Wau_Leg-C_Co_Ev_Vie_Martin");
    CHECK(*label.index == 29);
    CHECK(*label.field("author") == "Wau");
    CHECK(*label.field("collection") == "Leg-C");
    CHECK(*label.field("theme") == "Co");
    CHECK(*label.field("subtype") == "Ev");
    CHECK(*label.field("genre") == "Vie");
    CHECK(*label.field("title") == "Martin");
}

TEST_CASE("NA fields map to absent values") {
    auto label = parse_label("60_Ano_Leg-B_NA_NA_NA_Antechriste");
    CHECK(!label.field("theme"));
    CHECK(!label.field("subtype"));
    CHECK(!label.field("genre"));
    CHECK(*label.field("title") == "Antechriste");
}

TEST_CASE("trailing label parts join into the last field") {
    auto label = parse_label("04_Ano_Leg-A_Ap_NA_Vie_Jean_Ev");
    CHECK(*label.field("title") == "Jean_Ev");
}

TEST_CASE("parse_label rejects too few parts") {
    CHECK_THROWS_WITH(parse_label("onlyonefield"), doctest::Contains("onlyonefield"));
}

namespace {

Document doc_of_size(const std::string& id, size_t n) {
    Document d;
    d.id = id;
    d.n_words = n;
    d.tokens.assign(n, Token{"w", std::nullopt, std::nullopt});
    return d;
}

} // namespace

TEST_CASE("filter_min_length keeps documents at or above the threshold") {
    Corpus corpus;
    corpus.documents = {doc_of_size("a", 298), doc_of_size("b", 1014), doc_of_size("c", 3539)};
    std::vector<Exclusion> report;
    Corpus filtered = filter_min_length(corpus, 1000, &report);
    REQUIRE(filtered.documents.size() == 2);
    CHECK(filtered.documents[0].id == "b");
    CHECK(filtered.documents[1].id == "c");
    REQUIRE(report.size() == 1);
    CHECK(report[0].id == "a");
    CHECK(report[0].n_words == 298);
}

TEST_CASE("filter at the exact boundary retains the document") {
    Corpus corpus;
    corpus.documents = {doc_of_size("a", 1000)};
    CHECK(filter_min_length(corpus, 1000).documents.size() == 1);
}

TEST_CASE("min_words 0 is the identity; filtering is idempotent") {
    Corpus corpus;
    corpus.documents = {doc_of_size("a", 5), doc_of_size("b", 50), doc_of_size("c", 500)};
    CHECK(filter_min_length(corpus, 0).documents.size() == 3);
    Corpus once = filter_min_length(corpus, 40);
    Corpus twice = filter_min_length(once, 40);
    REQUIRE(once.documents.size() == twice.documents.size());
    for (size_t i = 0; i < once.documents.size(); ++i)
        CHECK(once.documents[i].id == twice.documents[i].id);
}

TEST_CASE("filtering everything is an error") {
    Corpus corpus;
    corpus.documents = {doc_of_size("a", 5)};
    CHECK_THROWS(filter_min_length(corpus, 10));
}

TEST_CASE("annotated serialization round-trips token sequences") {
    std::mt19937 rng(11);
    const char* poses[] = {"DETdef", "PRE", "NOMcom", "VERcjg"};
    for (int trial = 0; trial < 30; ++trial) {
        Document doc;
        doc.id = "d";
        int n = 1 + static_cast<int>(rng() % 40);
        for (int i = 0; i < n; ++i) {
            Token t;
            t.form = "f" + std::to_string(rng() % 100);
            if (rng() % 2)
                t.lemma = "l" + std::to_string(rng() % 50);
            if (rng() % 2)
                t.pos = poses[rng() % 4];
            doc.tokens.push_back(t);
        }
        Document parsed = parse_annotated(serialize_annotated(doc), "d");
        REQUIRE(parsed.tokens.size() == doc.tokens.size());
        for (size_t i = 0; i < doc.tokens.size(); ++i) {
            CHECK(parsed.tokens[i].form == doc.tokens[i].form);
            CHECK(parsed.tokens[i].lemma == doc.tokens[i].lemma);
            CHECK(parsed.tokens[i].pos == doc.tokens[i].pos);
        }
    }
}
