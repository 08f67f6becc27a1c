#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stylokit {

struct Token {
    std::string form;
    std::optional<std::string> lemma;
    std::optional<std::string> pos;
};

struct CorpusConfig {
    // Tokens whose POS starts with this prefix are skipped when counting
    // words, unless count_punctuation is set.
    std::string punctuation_pos_prefix = "PON";
    bool count_punctuation = false;
};

struct Document {
    std::string id;
    std::optional<std::string> raw_text;
    std::vector<Token> tokens;
    std::size_t n_words = 0;

    bool has_tokens() const { return !tokens.empty(); }
};

/// Parsed form of the underscore-separated document id convention
/// (e.g. "29_Wau_Leg-C_Co_Ev_Vie_Martin"). "NA" fields map to nullopt.
struct ReferenceLabel {
    std::optional<long> index;
    std::map<std::string, std::optional<std::string>> fields;

    std::optional<std::string> field(const std::string& name) const;
};

struct LabelSchema {
    std::vector<std::string> field_names;
    char separator = '_';

    static LabelSchema default_schema();
};

struct Corpus {
    std::vector<Document> documents;
    std::map<std::string, ReferenceLabel> labels;

    const Document* find(const std::string& id) const;
};

struct Exclusion {
    std::string id;
    std::size_t n_words;
    std::string reason;
};

std::size_t count_words(const std::vector<Token>& tokens, const CorpusConfig& cfg);

// One token per line, tab-separated form[\tlemma[\tpos]]. Blank lines and
// lines starting with '#' are skipped.
Document parse_annotated(const std::string& content, const std::string& id,
                         const CorpusConfig& cfg = {});

// Collapses whitespace runs to single spaces; tokens are the space-separated
// pieces of the normalized text.
Document parse_raw(const std::string& content, const std::string& id);

ReferenceLabel parse_label(const std::string& id, const LabelSchema& schema = LabelSchema::default_schema());

// Keeps documents with n_words >= min_words ("below" the threshold is
// removed, so an exact-threshold document stays).
Corpus filter_min_length(const Corpus& corpus, std::size_t min_words,
                         std::vector<Exclusion>* report = nullptr);

// Loads *.txt (raw) and *.tsv (annotated) files from the given directories;
// document id is the file stem. Either directory may be empty. A stem
// present in both directories yields one document carrying both the raw
// text and the token sequence (n_words comes from the tokens).
Corpus load_corpus(const std::string& raw_dir, const std::string& annotated_dir,
                   const LabelSchema& schema = LabelSchema::default_schema(),
                   const CorpusConfig& cfg = {});

std::string serialize_annotated(const Document& doc);

std::string exclusions_to_json(const std::vector<Exclusion>& exclusions);

} // namespace stylokit
