#include "stylokit/pipeline.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "stylokit/csv.hpp"

namespace fs = std::filesystem;

namespace stylokit {

FeatureFamily family_from_config_name(const std::string& name) {
    if (name == "char_ngram") return FeatureFamily::CharNgram;
    if (name == "affix") return FeatureFamily::Affix;
    if (name == "function_word") return FeatureFamily::FunctionWord;
    if (name == "function_lemma") return FeatureFamily::FunctionLemma;
    if (name == "pos_ngram") return FeatureFamily::PosNgram;
    if (name == "form") return FeatureFamily::Form;
    if (name == "lemma") return FeatureFamily::Lemma;
    throw std::runtime_error("unknown feature family in config: " + name);
}

namespace {

std::string resolve(const std::string& base, const std::string& path) {
    if (path.empty() || fs::path(path).is_absolute())
        return path;
    return (fs::path(base) / path).string();
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + p.string());
    out << content;
}

} // namespace

PipelineConfig PipelineConfig::from_json(const std::string& content, const std::string& base_dir) {
    auto j = nlohmann::json::parse(content);
    PipelineConfig cfg;
    const auto& c = j.at("corpus");
    cfg.raw_dir = resolve(base_dir, c.value("raw_dir", ""));
    cfg.annotated_dir = resolve(base_dir, c.value("annotated_dir", ""));
    cfg.min_words = c.value("min_words", std::size_t{1000});
    cfg.count_punctuation = c.value("count_punctuation", false);
    if (c.contains("label_schema"))
        cfg.schema.field_names = c.at("label_schema").get<std::vector<std::string>>();
    if (c.contains("label_separator")) {
        std::string sep = c.at("label_separator").get<std::string>();
        if (sep.size() != 1)
            throw std::runtime_error("label_separator must be a single character");
        cfg.schema.separator = sep[0];
    }
    cfg.reference_field = j.value("reference_field", std::string("author"));
    cfg.seed = j.value("seed", std::uint64_t{412});
    if (!j.contains("analyses") || j.at("analyses").empty())
        throw std::runtime_error("config defines no analyses");
    for (const auto& a : j.at("analyses")) {
        AnalysisSpec spec;
        spec.name = a.at("name").get<std::string>();
        if (!a.contains("families") || a.at("families").empty())
            throw std::runtime_error("analysis '" + spec.name + "' defines no feature families");
        for (const auto& f : a.at("families")) {
            FamilySpec fam;
            fam.family = family_from_config_name(f.at("family").get<std::string>());
            fam.n = f.value("n", std::size_t{3});
            if (fam.n < 1)
                throw std::runtime_error("analysis '" + spec.name + "': n must be >= 1");
            spec.families.push_back(fam);
        }
        spec.min_words = a.value("min_words", cfg.min_words);
        spec.z = a.value("z", 1.645);
        spec.k = a.value("k", std::size_t{5});
        cfg.analyses.push_back(std::move(spec));
    }
    return cfg;
}

Extractor make_extractor(const FamilySpec& spec, const CorpusConfig& cfg) {
    UnigramOptions opts;
    opts.punctuation_pos_prefix = cfg.punctuation_pos_prefix;
    switch (spec.family) {
    case FeatureFamily::CharNgram:
        return [n = spec.n](const Document& d) { return char_ngrams(d, n); };
    case FeatureFamily::Affix:
        return [n = spec.n](const Document& d) { return affix_ngrams(d, n); };
    case FeatureFamily::PosNgram:
        return [n = spec.n](const Document& d) { return pos_ngrams(d, n); };
    case FeatureFamily::FunctionWord:
        opts.function_only = true;
        return [opts](const Document& d) { return token_unigrams(d, TokenField::Form, opts); };
    case FeatureFamily::FunctionLemma:
        opts.function_only = true;
        return [opts](const Document& d) { return token_unigrams(d, TokenField::Lemma, opts); };
    case FeatureFamily::Form:
        return [opts](const Document& d) { return token_unigrams(d, TokenField::Form, opts); };
    case FeatureFamily::Lemma:
        return [opts](const Document& d) { return token_unigrams(d, TokenField::Lemma, opts); };
    }
    throw std::logic_error("unknown feature family");
}

AnalysisResult run_analysis(const Corpus& corpus, const AnalysisSpec& spec,
                            const std::string& reference_field, const CorpusConfig& cfg) {
    if (spec.families.empty())
        throw std::runtime_error("analysis '" + spec.name + "' has no feature families");
    AnalysisResult result;
    result.name = spec.name;
    try {
        std::vector<FrequencyMatrix> filtered;
        for (const auto& fam : spec.families) {
            auto matrix = build_matrix(corpus, make_extractor(fam, cfg));
            ReliabilityParams params;
            params.z = spec.z;
            params.smallest_size = smallest_basis(matrix);
            filtered.push_back(moisl_filter(matrix, params, &result.selection));
        }
        result.matrix = filtered.size() == 1 ? filtered.front() : concat_matrices(filtered);
        result.distances = delta_distances(result.matrix);
        result.dendrogram = ward_linkage(result.distances);
        result.assignment = cut_k(result.dendrogram, std::min(spec.k, corpus.documents.size()));
        result.ac = agglomerative_coefficient(result.dendrogram);
        if (!reference_field.empty()) {
            std::map<std::string, std::string> reference;
            bool complete = true;
            for (const auto& doc : corpus.documents) {
                auto it = corpus.labels.find(doc.id);
                std::optional<std::string> value;
                if (it != corpus.labels.end())
                    value = it->second.field(reference_field);
                if (!value) {
                    complete = false;
                    break;
                }
                reference[doc.id] = *value;
            }
            if (complete)
                result.purity = cluster_purity(result.assignment, reference);
        }
    } catch (const std::exception& e) {
        throw std::runtime_error("analysis '" + spec.name + "': " + e.what());
    }
    return result;
}

PipelineResult run_family_of_analyses(const Corpus& corpus, const PipelineConfig& config) {
    if (config.analyses.empty())
        throw std::runtime_error("no analyses configured");
    for (const auto& spec : config.analyses)
        if (spec.min_words != config.analyses.front().min_words)
            throw std::runtime_error(
                "analyses disagree on min_words; volatility needs an identical document set");

    PipelineResult result;
    Corpus filtered = filter_min_length(corpus, config.analyses.front().min_words,
                                        &result.exclusions);
    CorpusConfig ccfg;
    ccfg.count_punctuation = config.count_punctuation;

    ClusteringFamily family;
    for (const auto& spec : config.analyses) {
        auto analysis = run_analysis(filtered, spec, config.reference_field, ccfg);
        family.analyses.emplace_back(spec.name, analysis.assignment);
        result.analyses.push_back(std::move(analysis));
    }
    std::map<std::string, std::size_t> n_words;
    for (const auto& doc : filtered.documents)
        n_words[doc.id] = doc.n_words;
    result.volatility = volatility_report(family, n_words);
    if (result.volatility.rows.size() >= 3) {
        try {
            result.regression = volatility_length_relation(result.volatility, config.seed);
        } catch (const std::exception&) {
            // constant lengths or degenerate data: regression is skipped
        }
    }
    return result;
}

PipelineResult run_pipeline(const PipelineConfig& config, const std::string& out_dir) {
    Corpus corpus = [&] {
        CorpusConfig ccfg;
        ccfg.count_punctuation = config.count_punctuation;
        return load_corpus(config.raw_dir, config.annotated_dir, config.schema, ccfg);
    }();
    PipelineResult result = run_family_of_analyses(corpus, config);

    fs::create_directories(out_dir);
    write_file(fs::path(out_dir) / "exclusions.json", exclusions_to_json(result.exclusions));
    for (const auto& analysis : result.analyses) {
        fs::path dir = fs::path(out_dir) / analysis.name;
        fs::create_directories(dir);
        write_file(dir / "matrix.csv", matrix_to_csv(analysis.matrix));
        write_file(dir / "selection.csv", selection_report_to_csv(analysis.selection));
        write_file(dir / "distance.csv", distance_to_csv(analysis.distances));
        write_file(dir / "dendrogram.nwk", to_newick(analysis.dendrogram) + "\n");
        write_file(dir / "dendrogram.json", dendrogram_to_json(analysis.dendrogram));
        write_file(dir / "dendrogram.svg", dendrogram_to_svg(analysis.dendrogram));
        write_file(dir / "assignment.csv", assignment_to_csv(analysis.assignment));
        nlohmann::json summary;
        summary["name"] = analysis.name;
        summary["n_features"] = analysis.matrix.n_features();
        summary["n_documents"] = analysis.matrix.n_docs();
        summary["ac"] = analysis.ac;
        if (analysis.purity)
            summary["purity"] = *analysis.purity;
        summary["monotone"] = analysis.dendrogram.monotone;
        write_file(dir / "summary.json", summary.dump(2) + "\n");
    }
    write_file(fs::path(out_dir) / "volatility.csv", volatility_to_csv(result.volatility));
    write_file(fs::path(out_dir) / "volatility.json", volatility_to_json(result.volatility));
    if (result.regression) {
        nlohmann::json reg;
        reg["slope"] = result.regression->slope;
        reg["intercept"] = result.regression->intercept;
        reg["pearson_r"] = result.regression->pearson_r;
        reg["p_perm"] = result.regression->p_perm;
        reg["seed"] = result.regression->seed;
        reg["n_permutations"] = result.regression->n_permutations;
        write_file(fs::path(out_dir) / "regression.json", reg.dump(2) + "\n");
    }
    return result;
}

} // namespace stylokit
