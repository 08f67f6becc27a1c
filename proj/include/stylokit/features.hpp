#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "stylokit/corpus.hpp"

namespace stylokit {

enum class FeatureFamily {
    CharNgram,
    Affix,
    FunctionWord,
    FunctionLemma,
    PosNgram,
    Form,
    Lemma,
};

std::string family_name(FeatureFamily family);
FeatureFamily family_from_name(const std::string& name);

struct FeatureId {
    FeatureFamily family;
    std::string key;

    auto operator<=>(const FeatureId&) const = default;
};

struct FeatureCounts {
    FeatureFamily family;
    std::map<std::string, std::size_t> counts;
    std::size_t basis = 0; // sum of counts
};

struct FrequencyMatrix {
    std::vector<std::string> doc_ids;
    std::vector<FeatureId> features;
    std::vector<double> values; // row-major, doc_ids.size() x features.size()
    std::vector<std::size_t> bases; // per-document family total

    std::size_t n_docs() const { return doc_ids.size(); }
    std::size_t n_features() const { return features.size(); }
    double at(std::size_t doc, std::size_t feat) const {
        return values[doc * features.size() + feat];
    }
    double& at(std::size_t doc, std::size_t feat) {
        return values[doc * features.size() + feat];
    }
};

struct UnigramOptions {
    bool function_only = false;
    std::set<std::string> function_pos_prefixes = {"DET", "PRE", "PRO", "CON", "ADV"};
    std::string punctuation_pos_prefix = "PON";
};

enum class TokenField { Form, Lemma };

// Sliding window of n codepoints over the normalized, case-folded raw text;
// spaces are ordinary characters.
FeatureCounts char_ngrams(const Document& doc, std::size_t n);

// Pseudo-affixes: "^"+first n / last n+"$" for tokens of >= n+1 codepoints,
// "_"+first n-1 / last n-1+"_" for tokens of >= n-1 codepoints.
FeatureCounts affix_ngrams(const Document& doc, std::size_t n);

FeatureCounts pos_ngrams(const Document& doc, std::size_t n);

FeatureCounts token_unigrams(const Document& doc, TokenField field,
                             const UnigramOptions& opts = {});

using Extractor = std::function<FeatureCounts(const Document&)>;

// Union feature vocabulary ordered by (descending corpus total, key);
// values are count / per-document family basis.
FrequencyMatrix build_matrix(const Corpus& corpus, const Extractor& extractor);

FrequencyMatrix concat_matrices(const std::vector<FrequencyMatrix>& matrices);

std::string matrix_to_csv(const FrequencyMatrix& m);
FrequencyMatrix matrix_from_csv(const std::string& content);

// UTF-8 helpers shared by the extractors.
std::vector<std::string> utf8_codepoints(const std::string& s);
std::string ascii_fold(const std::string& s);

} // namespace stylokit
