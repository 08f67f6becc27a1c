#include "stylokit/features.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "stylokit/csv.hpp"

namespace stylokit {

std::string family_name(FeatureFamily family) {
    switch (family) {
    case FeatureFamily::CharNgram: return "CHAR";
    case FeatureFamily::Affix: return "AFFIX";
    case FeatureFamily::FunctionWord: return "FW";
    case FeatureFamily::FunctionLemma: return "FL";
    case FeatureFamily::PosNgram: return "POS";
    case FeatureFamily::Form: return "FORM";
    case FeatureFamily::Lemma: return "LEMMA";
    }
    throw std::logic_error("unknown feature family");
}

FeatureFamily family_from_name(const std::string& name) {
    if (name == "CHAR") return FeatureFamily::CharNgram;
    if (name == "AFFIX") return FeatureFamily::Affix;
    if (name == "FW") return FeatureFamily::FunctionWord;
    if (name == "FL") return FeatureFamily::FunctionLemma;
    if (name == "POS") return FeatureFamily::PosNgram;
    if (name == "FORM") return FeatureFamily::Form;
    if (name == "LEMMA") return FeatureFamily::Lemma;
    throw std::runtime_error("unknown feature family: " + name);
}

std::vector<std::string> utf8_codepoints(const std::string& s) {
    std::vector<std::string> out;
    size_t i = 0;
    while (i < s.size()) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        size_t len = 1;
        if (c >= 0xF0)
            len = 4;
        else if (c >= 0xE0)
            len = 3;
        else if (c >= 0xC0)
            len = 2;
        if (i + len > s.size())
            len = 1; // truncated sequence, take the byte as-is
        out.push_back(s.substr(i, len));
        i += len;
    }
    return out;
}

std::string ascii_fold(const std::string& s) {
    std::string out = s;
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

namespace {

void bump(FeatureCounts& fc, std::string key) {
    ++fc.counts[std::move(key)];
    ++fc.basis;
}

std::string join_range(const std::vector<std::string>& cps, size_t begin, size_t count) {
    std::string out;
    for (size_t i = begin; i < begin + count; ++i)
        out += cps[i];
    return out;
}

} // namespace

FeatureCounts char_ngrams(const Document& doc, std::size_t n) {
    if (!doc.raw_text)
        throw std::runtime_error(doc.id + ": char n-grams need raw text");
    if (n < 1)
        throw std::runtime_error("char n-gram width must be >= 1");
    FeatureCounts fc;
    fc.family = FeatureFamily::CharNgram;
    auto cps = utf8_codepoints(ascii_fold(*doc.raw_text));
    if (cps.size() >= n)
        for (size_t i = 0; i + n <= cps.size(); ++i)
            bump(fc, join_range(cps, i, n));
    return fc;
}

FeatureCounts affix_ngrams(const Document& doc, std::size_t n) {
    if (doc.tokens.empty())
        throw std::runtime_error(doc.id + ": affix extraction needs tokens");
    if (n < 2)
        throw std::runtime_error("affix width must be >= 2");
    FeatureCounts fc;
    fc.family = FeatureFamily::Affix;
    for (const auto& tok : doc.tokens) {
        auto cps = utf8_codepoints(ascii_fold(tok.form));
        size_t len = cps.size();
        if (len >= n + 1) {
            bump(fc, "^" + join_range(cps, 0, n));
            bump(fc, join_range(cps, len - n, n) + "$");
        }
        if (len >= n - 1) {
            bump(fc, "_" + join_range(cps, 0, n - 1));
            bump(fc, join_range(cps, len - (n - 1), n - 1) + "_");
        }
    }
    return fc;
}

FeatureCounts pos_ngrams(const Document& doc, std::size_t n) {
    if (doc.tokens.empty())
        throw std::runtime_error(doc.id + ": POS n-grams need tokens");
    if (n < 1)
        throw std::runtime_error("POS n-gram width must be >= 1");
    std::vector<size_t> missing;
    for (size_t i = 0; i < doc.tokens.size(); ++i)
        if (!doc.tokens[i].pos)
            missing.push_back(i);
    if (!missing.empty()) {
        std::ostringstream err;
        err << doc.id << ": tokens without POS at positions";
        for (size_t i = 0; i < missing.size() && i < 10; ++i)
            err << ' ' << missing[i];
        if (missing.size() > 10)
            err << " (+" << missing.size() - 10 << " more)";
        throw std::runtime_error(err.str());
    }
    FeatureCounts fc;
    fc.family = FeatureFamily::PosNgram;
    if (doc.tokens.size() >= n) {
        for (size_t i = 0; i + n <= doc.tokens.size(); ++i) {
            std::string key;
            for (size_t j = 0; j < n; ++j) {
                if (j)
                    key.push_back(' ');
                key += *doc.tokens[i + j].pos;
            }
            bump(fc, std::move(key));
        }
    }
    return fc;
}

FeatureCounts token_unigrams(const Document& doc, TokenField field, const UnigramOptions& opts) {
    if (doc.tokens.empty())
        throw std::runtime_error(doc.id + ": token unigrams need tokens");
    FeatureCounts fc;
    if (field == TokenField::Form)
        fc.family = opts.function_only ? FeatureFamily::FunctionWord : FeatureFamily::Form;
    else
        fc.family = opts.function_only ? FeatureFamily::FunctionLemma : FeatureFamily::Lemma;
    for (size_t i = 0; i < doc.tokens.size(); ++i) {
        const Token& tok = doc.tokens[i];
        if (opts.function_only) {
            if (!tok.pos)
                throw std::runtime_error(doc.id + ": token " + std::to_string(i) +
                                         " lacks POS, needed for function-word selection");
            if (tok.pos->rfind(opts.punctuation_pos_prefix, 0) == 0)
                continue;
            bool match = false;
            for (const auto& prefix : opts.function_pos_prefixes)
                if (tok.pos->rfind(prefix, 0) == 0) {
                    match = true;
                    break;
                }
            if (!match)
                continue;
        }
        if (field == TokenField::Form) {
            bump(fc, ascii_fold(tok.form));
        } else {
            if (!tok.lemma)
                throw std::runtime_error(doc.id + ": token " + std::to_string(i) + " lacks lemma");
            bump(fc, *tok.lemma);
        }
    }
    return fc;
}

FrequencyMatrix build_matrix(const Corpus& corpus, const Extractor& extractor) {
    if (corpus.documents.empty())
        throw std::runtime_error("empty corpus");
    std::vector<FeatureCounts> per_doc;
    per_doc.reserve(corpus.documents.size());
    std::map<std::string, std::size_t> totals;
    FeatureFamily family{};
    for (const auto& doc : corpus.documents) {
        FeatureCounts fc;
        try {
            fc = extractor(doc);
        } catch (const std::exception& e) {
            throw std::runtime_error("extraction failed for '" + doc.id + "': " + e.what());
        }
        family = fc.family;
        for (const auto& [key, count] : fc.counts)
            totals[key] += count;
        per_doc.push_back(std::move(fc));
    }

    std::vector<std::pair<std::string, std::size_t>> order(totals.begin(), totals.end());
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second)
            return a.second > b.second;
        return a.first < b.first;
    });

    FrequencyMatrix m;
    for (const auto& doc : corpus.documents)
        m.doc_ids.push_back(doc.id);
    m.features.reserve(order.size());
    for (const auto& [key, total] : order)
        m.features.push_back(FeatureId{family, key});
    m.values.assign(m.doc_ids.size() * m.features.size(), 0.0);
    m.bases.reserve(per_doc.size());
    for (size_t d = 0; d < per_doc.size(); ++d) {
        const auto& fc = per_doc[d];
        m.bases.push_back(fc.basis);
        if (fc.basis == 0)
            continue;
        for (size_t f = 0; f < m.features.size(); ++f) {
            auto it = fc.counts.find(m.features[f].key);
            if (it != fc.counts.end())
                m.at(d, f) = static_cast<double>(it->second) / static_cast<double>(fc.basis);
        }
    }
    return m;
}

FrequencyMatrix concat_matrices(const std::vector<FrequencyMatrix>& matrices) {
    if (matrices.empty())
        throw std::runtime_error("no matrices to concatenate");
    const auto& ids = matrices.front().doc_ids;
    for (const auto& m : matrices)
        if (m.doc_ids != ids)
            throw std::runtime_error("document id mismatch between concatenated matrices");
    FrequencyMatrix out;
    out.doc_ids = ids;
    size_t width = 0;
    for (const auto& m : matrices) {
        width += m.n_features();
        out.features.insert(out.features.end(), m.features.begin(), m.features.end());
    }
    out.values.resize(ids.size() * width);
    for (size_t d = 0; d < ids.size(); ++d) {
        size_t col = 0;
        for (const auto& m : matrices)
            for (size_t f = 0; f < m.n_features(); ++f)
                out.values[d * width + col++] = m.at(d, f);
    }
    // per-family bases are not meaningful after concatenation
    return out;
}

std::string matrix_to_csv(const FrequencyMatrix& m) {
    std::string out;
    std::vector<std::string> header;
    header.reserve(1 + m.n_features());
    header.emplace_back("id");
    for (const auto& f : m.features)
        header.push_back(family_name(f.family) + ":" + f.key);
    out += csv::join_row(header);
    out.push_back('\n');
    for (size_t d = 0; d < m.n_docs(); ++d) {
        std::vector<std::string> row;
        row.reserve(1 + m.n_features());
        row.push_back(m.doc_ids[d]);
        for (size_t f = 0; f < m.n_features(); ++f)
            row.push_back(csv::format_double(m.at(d, f)));
        out += csv::join_row(row);
        out.push_back('\n');
    }
    return out;
}

FrequencyMatrix matrix_from_csv(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty matrix CSV");
    auto header = csv::split_row(line);
    if (header.size() < 2 || header[0] != "id")
        throw std::runtime_error("matrix CSV header must start with 'id'");
    FrequencyMatrix m;
    for (size_t i = 1; i < header.size(); ++i) {
        size_t colon = header[i].find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("feature column lacks FAMILY: prefix: " + header[i]);
        m.features.push_back(
            FeatureId{family_from_name(header[i].substr(0, colon)), header[i].substr(colon + 1)});
    }
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto row = csv::split_row(line);
        if (row.size() != header.size())
            throw std::runtime_error("matrix CSV row width mismatch at doc '" +
                                     (row.empty() ? "" : row[0]) + "'");
        m.doc_ids.push_back(row[0]);
        for (size_t i = 1; i < row.size(); ++i)
            m.values.push_back(std::stod(row[i]));
    }
    if (m.doc_ids.empty())
        throw std::runtime_error("matrix CSV has no data rows");
    return m;
}

} // namespace stylokit
