#include "doctest.h"

#include <map>
#include <random>

#include "stylokit/corpus.hpp"
#include "stylokit/features.hpp"

using namespace stylokit;

namespace {

Document raw_doc(const std::string& text) { return parse_raw(text, "d"); }

Document token_doc(const std::vector<std::string>& forms) {
    Document d;
    d.id = "d";
    for (const auto& f : forms)
        d.tokens.push_back(Token{f, std::nullopt, std::nullopt});
    d.n_words = d.tokens.size();
    return d;
}

Document pos_doc(const std::vector<std::string>& tags) {
    Document d;
    d.id = "d";
    for (const auto& t : tags)
        d.tokens.push_back(Token{"w", std::nullopt, t});
    d.n_words = d.tokens.size();
    return d;
}

// Independent sliding-window oracle over codepoints.
std::map<std::string, size_t> window_oracle(const std::string& text, size_t n) {
    auto cps = utf8_codepoints(text);
    std::map<std::string, size_t> counts;
    if (cps.size() < n)
        return counts;
    for (size_t i = 0; i + n <= cps.size(); ++i) {
        std::string gram;
        for (size_t j = i; j < i + n; ++j)
            gram += cps[j];
        ++counts[gram];
    }
    return counts;
}

} // namespace

TEST_CASE("char_ngrams counts overlapping windows") {
    auto fc = char_ngrams(raw_doc("aaaa"), 3);
    CHECK(fc.counts == std::map<std::string, size_t>{{"aaa", 2}});
    CHECK(fc.basis == 2);
}

TEST_CASE("char_ngrams on text shorter than n is empty") {
    auto fc = char_ngrams(raw_doc("ab"), 3);
    CHECK(fc.counts.empty());
    CHECK(fc.basis == 0);
}

TEST_CASE("char_ngrams matches the sliding-window oracle on 'la corone'") {
    auto fc = char_ngrams(raw_doc("la corone"), 3);
    auto expected = window_oracle("la corone", 3);
    CHECK(expected.size() == 7);
    CHECK(fc.counts == expected);
    CHECK(fc.counts.count("la "));
    CHECK(fc.counts.count("a c"));
    CHECK(fc.counts.count(" co"));
    CHECK(fc.counts.count("cor"));
    CHECK(fc.counts.count("oro"));
    CHECK(fc.counts.count("ron"));
    CHECK(fc.counts.count("one"));
}

TEST_CASE("char_ngrams total equals max(0, len - n + 1), case-folded, UTF-8 aware") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        std::string text;
        int len = 1 + static_cast<int>(rng() % 40);
        const char* alphabet[] = {"a", "B", "c", " ", "é", "ç"};
        for (int i = 0; i < len; ++i)
            text += alphabet[rng() % 6];
        Document d;
        d.id = "d";
        d.raw_text = text;
        for (size_t n : {1, 2, 3, 4}) {
            auto fc = char_ngrams(d, n);
            size_t cps = utf8_codepoints(text).size();
            size_t expected = cps >= n ? cps - n + 1 : 0;
            CHECK(fc.basis == expected);
            CHECK(fc.counts == window_oracle(ascii_fold(text), n));
        }
    }
    CHECK_THROWS(char_ngrams(token_doc({"a"}), 3)); // no raw text
}

TEST_CASE("affix_ngrams extracts the four pseudo-affixes of 'annoncier'") {
    auto fc = affix_ngrams(token_doc({"annoncier"}), 3);
    std::map<std::string, size_t> expected{{"^ann", 1}, {"ier$", 1}, {"_an", 1}, {"er_", 1}};
    CHECK(fc.counts == expected);
    CHECK(fc.basis == 4);
}

TEST_CASE("short tokens yield only space-affixes or nothing") {
    // "de": 2 < n+1 = 4, 2 >= n-1 = 2 -> space-affixes only
    auto fc = affix_ngrams(token_doc({"de"}), 3);
    CHECK(fc.counts == std::map<std::string, size_t>{{"_de", 1}, {"de_", 1}});
    // "a": 1 < n-1 = 2 -> nothing
    auto none = affix_ngrams(token_doc({"a"}), 3);
    CHECK(none.counts.empty());
    CHECK_THROWS(affix_ngrams(Document{.id = "d"}, 3));
}

TEST_CASE("affix_ngrams emits at most 4 per token, exactly 4 when long enough") {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<std::string> forms;
        size_t long_tokens = 0;
        int n_tokens = 1 + static_cast<int>(rng() % 20);
        for (int i = 0; i < n_tokens; ++i) {
            std::string f;
            int len = 1 + static_cast<int>(rng() % 9);
            for (int c = 0; c < len; ++c)
                f.push_back(static_cast<char>('a' + rng() % 5));
            if (f.size() >= 4)
                ++long_tokens;
            forms.push_back(f);
        }
        auto fc = affix_ngrams(token_doc(forms), 3);
        CHECK(fc.basis <= 4u * forms.size());
        CHECK(fc.basis >= 4u * long_tokens);
    }
}

TEST_CASE("pos_ngrams joins tags with spaces") {
    auto fc = pos_ngrams(pos_doc({"PRE", "DETdef", "NOMcom"}), 3);
    CHECK(fc.counts == std::map<std::string, size_t>{{"PRE DETdef NOMcom", 1}});

    CHECK(pos_ngrams(pos_doc({"A", "B"}), 3).counts.empty());

    auto fc2 = pos_ngrams(pos_doc({"A", "B", "C", "D"}), 3);
    CHECK(fc2.counts == std::map<std::string, size_t>{{"A B C", 1}, {"B C D", 1}});
    CHECK(fc2.basis == 2);
}

TEST_CASE("pos_ngrams reports tokens missing POS") {
    Document d = pos_doc({"A", "B", "C"});
    d.tokens[1].pos.reset();
    CHECK_THROWS_WITH(pos_ngrams(d, 3), doctest::Contains("positions 1"));
}

TEST_CASE("lemma unigrams merge spelling variants") {
    Document d;
    d.id = "d";
    d.tokens.push_back(Token{"compaignie", "compagnie", "NOMcom"});
    d.tokens.push_back(Token{"conpaignie", "compagnie", "NOMcom"});
    auto fc = token_unigrams(d, TokenField::Lemma);
    CHECK(fc.counts == std::map<std::string, size_t>{{"compagnie", 2}});
    CHECK(fc.family == FeatureFamily::Lemma);
}

TEST_CASE("function-word selection is POS-prefix driven") {
    Document d;
    d.id = "d";
    d.tokens.push_back(Token{"le", "le", "DETdef"});
    d.tokens.push_back(Token{"roi", "roi", "NOMcom"});
    d.tokens.push_back(Token{"de", "de", "PRE"});
    d.tokens.push_back(Token{".", ".", "PONfrt"});
    UnigramOptions opts;
    opts.function_only = true;
    auto fc = token_unigrams(d, TokenField::Form, opts);
    CHECK(fc.counts == std::map<std::string, size_t>{{"le", 1}, {"de", 1}});
    CHECK(fc.family == FeatureFamily::FunctionWord);

    CHECK_THROWS(token_unigrams(Document{.id = "d"}, TokenField::Form));
}

TEST_CASE("forms are case-folded before counting") {
    auto fc = token_unigrams(token_doc({"Le", "le", "LE"}), TokenField::Form);
    CHECK(fc.counts == std::map<std::string, size_t>{{"le", 3}});
}

namespace {

Corpus counts_corpus(const std::vector<std::map<std::string, size_t>>& docs) {
    // Encodes explicit count maps as token documents so build_matrix can be
    // driven with plain unigram extraction.
    Corpus corpus;
    for (size_t i = 0; i < docs.size(); ++i) {
        Document d;
        d.id = "doc" + std::to_string(i);
        for (const auto& [word, count] : docs[i])
            for (size_t c = 0; c < count; ++c)
                d.tokens.push_back(Token{word, std::nullopt, std::nullopt});
        d.n_words = d.tokens.size();
        corpus.documents.push_back(std::move(d));
    }
    return corpus;
}

Extractor form_extractor() {
    return [](const Document& d) { return token_unigrams(d, TokenField::Form); };
}

} // namespace

TEST_CASE("build_matrix normalizes by the family basis and orders by total count") {
    Corpus corpus = counts_corpus({{{"a", 1}, {"b", 3}}});
    auto m = build_matrix(corpus, form_extractor());
    REQUIRE(m.n_features() == 2);
    CHECK(m.features[0].key == "b");
    CHECK(m.features[1].key == "a");
    CHECK(m.at(0, 0) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(m.at(0, 1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(m.bases == std::vector<size_t>{4});
}

TEST_CASE("identical documents give identical rows; absent features are 0") {
    Corpus corpus = counts_corpus({{{"a", 2}, {"b", 1}}, {{"a", 2}, {"b", 1}}, {{"a", 3}}});
    auto m = build_matrix(corpus, form_extractor());
    for (size_t f = 0; f < m.n_features(); ++f)
        CHECK(m.at(0, f) == m.at(1, f));
    // doc2 lacks "b"
    size_t b_col = m.features[0].key == "b" ? 0 : 1;
    CHECK(m.at(2, b_col) == 0.0);
}

TEST_CASE("unfiltered single-family rows sum to 1") {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::map<std::string, size_t>> docs;
        int nd = 2 + static_cast<int>(rng() % 5);
        for (int d = 0; d < nd; ++d) {
            std::map<std::string, size_t> counts;
            int nf = 1 + static_cast<int>(rng() % 8);
            for (int f = 0; f < nf; ++f)
                counts["w" + std::to_string(rng() % 12)] = 1 + rng() % 9;
            docs.push_back(counts);
        }
        auto m = build_matrix(counts_corpus(docs), form_extractor());
        for (size_t d = 0; d < m.n_docs(); ++d) {
            double sum = 0.0;
            for (size_t f = 0; f < m.n_features(); ++f)
                sum += m.at(d, f);
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("feature ordering is deterministic across runs") {
    Corpus corpus = counts_corpus({{{"x", 2}, {"y", 2}, {"z", 1}}, {{"x", 1}, {"w", 1}}});
    auto a = build_matrix(corpus, form_extractor());
    auto b = build_matrix(corpus, form_extractor());
    CHECK(a.features == b.features);
    CHECK(a.values == b.values);
    // equal totals tie-break lexicographically
    CHECK(a.features[0].key == "x");
    CHECK(a.features[1].key == "y");
}

TEST_CASE("concat_matrices is width-additive and value-preserving") {
    Corpus corpus = counts_corpus({{{"a", 1}, {"b", 2}}, {{"a", 3}, {"c", 1}}});
    auto m1 = build_matrix(corpus, form_extractor());
    auto m2 = build_matrix(corpus, form_extractor());
    auto cat = concat_matrices({m1, m2});
    CHECK(cat.n_features() == m1.n_features() + m2.n_features());
    for (size_t d = 0; d < cat.n_docs(); ++d)
        for (size_t f = 0; f < m1.n_features(); ++f) {
            CHECK(cat.at(d, f) == m1.at(d, f));
            CHECK(cat.at(d, m1.n_features() + f) == m2.at(d, f));
        }
    auto single = concat_matrices({m1});
    CHECK(single.values == m1.values);
    CHECK(single.features == m1.features);

    auto other = m2;
    other.doc_ids[0] = "different";
    CHECK_THROWS(concat_matrices({m1, other}));
}

TEST_CASE("matrix CSV round-trips ids, features and values") {
    Corpus corpus = counts_corpus({{{"a,b", 1}, {"q\"x", 2}}, {{"a,b", 3}}});
    auto m = build_matrix(corpus, form_extractor());
    auto back = matrix_from_csv(matrix_to_csv(m));
    CHECK(back.doc_ids == m.doc_ids);
    CHECK(back.features == m.features);
    CHECK(back.values == m.values); // shortest round-trip decimals, bit-exact
}
