#include "stylokit/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fs = std::filesystem;

namespace stylokit {

namespace {

std::string trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos)
        return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

bool is_punct_token(const Token& t, const CorpusConfig& cfg) {
    return t.pos && t.pos->rfind(cfg.punctuation_pos_prefix, 0) == 0;
}

} // namespace

std::optional<std::string> ReferenceLabel::field(const std::string& name) const {
    auto it = fields.find(name);
    if (it == fields.end())
        return std::nullopt;
    return it->second;
}

LabelSchema LabelSchema::default_schema() {
    return LabelSchema{{"index", "author", "collection", "theme", "subtype", "genre", "title"}, '_'};
}

const Document* Corpus::find(const std::string& id) const {
    for (const auto& d : documents)
        if (d.id == id)
            return &d;
    return nullptr;
}

std::size_t count_words(const std::vector<Token>& tokens, const CorpusConfig& cfg) {
    if (cfg.count_punctuation)
        return tokens.size();
    return static_cast<std::size_t>(std::count_if(
        tokens.begin(), tokens.end(), [&](const Token& t) { return !is_punct_token(t, cfg); }));
}

Document parse_annotated(const std::string& content, const std::string& id,
                         const CorpusConfig& cfg) {
    Document doc;
    doc.id = id;
    std::istringstream in(content);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (trim(line).empty() || line[0] == '#')
            continue;
        std::vector<std::string> parts;
        size_t start = 0;
        while (true) {
            size_t tab = line.find('\t', start);
            if (tab == std::string::npos) {
                parts.push_back(line.substr(start));
                break;
            }
            parts.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
        if (parts.size() > 3)
            throw std::runtime_error(id + ": line " + std::to_string(lineno) +
                                     ": expected at most 3 tab-separated fields, got " +
                                     std::to_string(parts.size()));
        Token tok;
        tok.form = trim(parts[0]);
        if (tok.form.empty())
            throw std::runtime_error(id + ": line " + std::to_string(lineno) + ": empty form field");
        if (parts.size() >= 2 && !trim(parts[1]).empty())
            tok.lemma = trim(parts[1]);
        if (parts.size() >= 3 && !trim(parts[2]).empty()) {
            std::string pos = trim(parts[2]);
            if (pos.find(' ') != std::string::npos)
                throw std::runtime_error(id + ": line " + std::to_string(lineno) +
                                         ": POS tag contains whitespace: '" + pos + "'");
            tok.pos = pos;
        }
        doc.tokens.push_back(std::move(tok));
    }
    if (doc.tokens.empty())
        throw std::runtime_error(id + ": empty document");
    doc.n_words = count_words(doc.tokens, cfg);
    return doc;
}

Document parse_raw(const std::string& content, const std::string& id) {
    Document doc;
    doc.id = id;
    std::string normalized;
    normalized.reserve(content.size());
    bool in_space = true; // also strips leading whitespace
    std::string current;
    for (char c : content) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
            if (!in_space) {
                normalized.push_back(' ');
                doc.tokens.push_back(Token{current, std::nullopt, std::nullopt});
                current.clear();
            }
            in_space = true;
        } else {
            normalized.push_back(c);
            current.push_back(c);
            in_space = false;
        }
    }
    if (!current.empty())
        doc.tokens.push_back(Token{current, std::nullopt, std::nullopt});
    if (!normalized.empty() && normalized.back() == ' ')
        normalized.pop_back();
    if (normalized.empty())
        throw std::runtime_error(id + ": empty document after whitespace normalization");
    doc.raw_text = normalized;
    doc.n_words = doc.tokens.size();
    return doc;
}

ReferenceLabel parse_label(const std::string& id, const LabelSchema& schema) {
    if (schema.field_names.empty())
        throw std::runtime_error("label schema has no fields");
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t sep = id.find(schema.separator, start);
        if (sep == std::string::npos) {
            parts.push_back(id.substr(start));
            break;
        }
        parts.push_back(id.substr(start, sep - start));
        start = sep + 1;
    }
    if (parts.size() < schema.field_names.size())
        throw std::runtime_error("label '" + id + "' has " + std::to_string(parts.size()) +
                                 " parts, schema needs " +
                                 std::to_string(schema.field_names.size()));
    // Extra trailing parts belong to the last field (titles may contain the
    // separator).
    size_t nfields = schema.field_names.size();
    if (parts.size() > nfields) {
        for (size_t i = nfields; i < parts.size(); ++i)
            parts[nfields - 1] += schema.separator + parts[i];
        parts.resize(nfields);
    }
    ReferenceLabel label;
    for (size_t i = 0; i < nfields; ++i) {
        const std::string& name = schema.field_names[i];
        if (parts[i] == "NA")
            label.fields[name] = std::nullopt;
        else
            label.fields[name] = parts[i];
        if (name == "index" && parts[i] != "NA") {
            try {
                label.index = std::stol(parts[i]);
            } catch (const std::exception&) {
                // non-numeric index kept as a plain field
            }
        }
    }
    return label;
}

Corpus filter_min_length(const Corpus& corpus, std::size_t min_words,
                         std::vector<Exclusion>* report) {
    Corpus out;
    for (const auto& doc : corpus.documents) {
        if (doc.n_words >= min_words) {
            out.documents.push_back(doc);
            auto it = corpus.labels.find(doc.id);
            if (it != corpus.labels.end())
                out.labels[doc.id] = it->second;
        } else if (report) {
            report->push_back(Exclusion{doc.id, doc.n_words,
                                        "n_words below minimum " + std::to_string(min_words)});
        }
    }
    if (out.documents.empty())
        throw std::runtime_error("length filter removed every document (min_words=" +
                                 std::to_string(min_words) + ")");
    return out;
}

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

Corpus load_corpus(const std::string& raw_dir, const std::string& annotated_dir,
                   const LabelSchema& schema, const CorpusConfig& cfg) {
    Corpus corpus;
    std::map<std::string, size_t> index;
    auto add = [&](Document doc, bool annotated) {
        auto [it, inserted] = index.emplace(doc.id, corpus.documents.size());
        if (!inserted) {
            // Same text in raw and annotated form: annotated tokens replace
            // the space-split raw ones, and the token count wins.
            Document& existing = corpus.documents[it->second];
            if (doc.raw_text && !existing.raw_text)
                existing.raw_text = doc.raw_text;
            if (annotated) {
                existing.tokens = std::move(doc.tokens);
                existing.n_words = count_words(existing.tokens, cfg);
            }
            return;
        }
        try {
            corpus.labels[doc.id] = parse_label(doc.id, schema);
        } catch (const std::exception&) {
            // ids that do not follow the naming convention get no label
        }
        corpus.documents.push_back(std::move(doc));
    };
    auto scan = [&](const std::string& dir, const std::string& ext, bool annotated) {
        if (dir.empty())
            return;
        if (!fs::is_directory(dir))
            throw std::runtime_error("not a directory: " + dir);
        std::vector<fs::path> paths;
        for (const auto& entry : fs::recursive_directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().extension() == ext)
                paths.push_back(entry.path());
        std::sort(paths.begin(), paths.end());
        for (const auto& p : paths) {
            std::string content = read_file(p);
            std::string id = p.stem().string();
            add(annotated ? parse_annotated(content, id, cfg) : parse_raw(content, id),
                annotated);
        }
    };
    scan(raw_dir, ".txt", false);
    scan(annotated_dir, ".tsv", true);
    if (corpus.documents.empty())
        throw std::runtime_error("no documents found");
    return corpus;
}

std::string serialize_annotated(const Document& doc) {
    std::string out;
    for (const auto& t : doc.tokens) {
        out += t.form;
        if (t.lemma || t.pos) {
            out.push_back('\t');
            if (t.lemma)
                out += *t.lemma;
            if (t.pos) {
                out.push_back('\t');
                out += *t.pos;
            }
        }
        out.push_back('\n');
    }
    return out;
}

std::string exclusions_to_json(const std::vector<Exclusion>& exclusions) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : exclusions)
        arr.push_back({{"id", e.id}, {"n_words", e.n_words}, {"reason", e.reason}});
    return arr.dump(2) + "\n";
}

} // namespace stylokit
