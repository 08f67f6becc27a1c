#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "stylokit/csv.hpp"
#include "stylokit/pipeline.hpp"

namespace fs = std::filesystem;
using namespace stylokit;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out << content;
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
    if (const char* env = std::getenv("STYLOKIT_SEED"))
        return std::stoull(env);
    return fallback;
}

FeatureCounts load_counts(const std::string& path, const std::string& field) {
    Document doc = parse_annotated(read_file(path), fs::path(path).stem().string());
    if (field == "lemma")
        return token_unigrams(doc, TokenField::Lemma);
    if (field == "form")
        return token_unigrams(doc, TokenField::Form);
    if (field == "pos3")
        return pos_ngrams(doc, 3);
    throw std::runtime_error("unknown field '" + field + "' (expected lemma, form or pos3)");
}

struct IngestArgs {
    std::string raw_dir, annotated_dir, exclusions_path;
    std::size_t min_words = 0;
};

struct ExtractArgs {
    std::string raw_dir, annotated_dir, family = "char_ngram", out;
    std::size_t n = 3;
    std::size_t min_words = 0;
};

struct FilterArgs {
    std::string matrix, out, report;
    double z = 1.645;
    std::size_t smallest = 0;
};

struct ClusterArgs {
    std::string distances, format = "newick", out, assign;
    std::size_t k = 5;
    bool squared = false;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stylokit: stylometric corpus analysis (Delta distances, Ward clustering, "
                 "reliability filtering, volatility)"};
    app.require_subcommand(1);

    IngestArgs ingest;
    auto* cmd_ingest = app.add_subcommand("ingest", "Load a corpus and report document sizes");
    cmd_ingest->add_option("--raw", ingest.raw_dir, "Directory of raw *.txt files");
    cmd_ingest->add_option("--annotated", ingest.annotated_dir, "Directory of annotated *.tsv files");
    cmd_ingest->add_option("--min-words", ingest.min_words, "Drop documents below this word count");
    cmd_ingest->add_option("--exclusions", ingest.exclusions_path, "Write excluded ids as JSON");

    ExtractArgs extract;
    auto* cmd_extract = app.add_subcommand("extract", "Build a relative-frequency matrix");
    cmd_extract->add_option("--raw", extract.raw_dir, "Directory of raw *.txt files");
    cmd_extract->add_option("--annotated", extract.annotated_dir, "Directory of annotated *.tsv files");
    cmd_extract
        ->add_option("--family", extract.family,
                     "char_ngram | affix | function_word | function_lemma | pos_ngram | form | lemma")
        ->check(CLI::IsMember({"char_ngram", "affix", "function_word", "function_lemma",
                               "pos_ngram", "form", "lemma"}));
    cmd_extract->add_option("--n", extract.n, "n-gram / affix width")->check(CLI::PositiveNumber);
    cmd_extract->add_option("--min-words", extract.min_words, "Drop documents below this word count");
    cmd_extract->add_option("--out", extract.out, "Output matrix CSV")->required();

    FilterArgs filter;
    auto* cmd_filter = app.add_subcommand("filter", "Reliability-filter a frequency matrix");
    cmd_filter->add_option("matrix", filter.matrix, "Input matrix CSV")->required();
    cmd_filter->add_option("--z", filter.z, "Confidence coefficient")->check(CLI::PositiveNumber);
    cmd_filter
        ->add_option("--smallest-size", filter.smallest,
                     "Family-basis size of the smallest document")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd_filter->add_option("--out", filter.out, "Filtered matrix CSV")->required();
    cmd_filter->add_option("--report", filter.report, "Selection report CSV");

    std::string dist_matrix, dist_out;
    auto* cmd_distance = app.add_subcommand("distance", "Delta distance matrix from a frequency matrix");
    cmd_distance->add_option("matrix", dist_matrix, "Input matrix CSV")->required();
    cmd_distance->add_option("--out", dist_out, "Output distance CSV")->required();

    ClusterArgs cluster;
    auto* cmd_cluster = app.add_subcommand("cluster", "Ward clustering of a distance matrix");
    cmd_cluster->add_option("distances", cluster.distances, "Distance matrix CSV")->required();
    cmd_cluster->add_option("--format", cluster.format, "newick | json | svg")
        ->check(CLI::IsMember({"newick", "json", "svg"}));
    cmd_cluster->add_option("--out", cluster.out, "Dendrogram output file")->required();
    cmd_cluster->add_option("--k", cluster.k, "Cluster count for the flat cut")
        ->check(CLI::PositiveNumber);
    cmd_cluster->add_option("--assign", cluster.assign, "Write the flat assignment CSV");
    cmd_cluster->add_flag("--squared", cluster.squared,
                          "Apply the Ward recurrence to squared dissimilarities");

    std::string purity_assign, purity_field = "author";
    auto* cmd_purity = app.add_subcommand("purity", "Cluster purity against id-derived labels");
    cmd_purity->add_option("assignment", purity_assign, "Assignment CSV")->required();
    cmd_purity->add_option("--field", purity_field, "Reference label field");

    std::vector<std::string> vol_assignments;
    std::string vol_out;
    auto* cmd_volatility = app.add_subcommand("volatility", "Volatility across flat clusterings");
    cmd_volatility->add_option("assignments", vol_assignments, "Assignment CSVs")
        ->required()
        ->expected(-1);
    cmd_volatility->add_option("--out", vol_out, "Volatility table CSV");

    std::string delta_a, delta_b, delta_field = "lemma";
    auto* cmd_delta = app.add_subcommand("corpus-delta", "Count-difference metric between two "
                                                         "annotated files");
    cmd_delta->add_option("a", delta_a, "Annotated TSV to evaluate")->required();
    cmd_delta->add_option("b", delta_b, "Annotated TSV ground truth")->required();
    cmd_delta->add_option("--field", delta_field, "lemma | form | pos3")
        ->check(CLI::IsMember({"lemma", "form", "pos3"}));

    std::string run_config, run_out = "out";
    auto* cmd_run = app.add_subcommand("run", "Execute a full config-driven analysis");
    cmd_run->add_option("--config", run_config, "Pipeline config JSON")->required();
    cmd_run->add_option("--out", run_out, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        app.exit(e);
        return 2;
    }

    try {
        if (*cmd_ingest) {
            Corpus corpus = load_corpus(ingest.raw_dir, ingest.annotated_dir);
            std::vector<Exclusion> excluded;
            if (ingest.min_words > 0)
                corpus = filter_min_length(corpus, ingest.min_words, &excluded);
            for (const auto& doc : corpus.documents)
                std::cout << doc.id << "\t" << doc.n_words << "\n";
            std::cout << corpus.documents.size() << " documents, " << excluded.size()
                      << " excluded\n";
            if (!ingest.exclusions_path.empty())
                write_file(ingest.exclusions_path, exclusions_to_json(excluded));
        } else if (*cmd_extract) {
            Corpus corpus = load_corpus(extract.raw_dir, extract.annotated_dir);
            if (extract.min_words > 0)
                corpus = filter_min_length(corpus, extract.min_words);
            FamilySpec fam{family_from_config_name(extract.family), extract.n};
            auto matrix = build_matrix(corpus, make_extractor(fam, CorpusConfig{}));
            write_file(extract.out, matrix_to_csv(matrix));
            std::cout << matrix.n_docs() << " documents x " << matrix.n_features()
                      << " features (smallest basis " << smallest_basis(matrix) << ")\n";
        } else if (*cmd_filter) {
            auto matrix = matrix_from_csv(read_file(filter.matrix));
            ReliabilityParams params{filter.z, filter.smallest};
            std::vector<SelectionRow> report;
            auto kept = moisl_filter(matrix, params, &report);
            write_file(filter.out, matrix_to_csv(kept));
            if (!filter.report.empty())
                write_file(filter.report, selection_report_to_csv(report));
            std::cout << kept.n_features() << " of " << matrix.n_features()
                      << " features kept\n";
        } else if (*cmd_distance) {
            auto matrix = matrix_from_csv(read_file(dist_matrix));
            auto d = delta_distances(matrix);
            write_file(dist_out, distance_to_csv(d));
            std::cout << d.size() << " x " << d.size() << " distance matrix written\n";
        } else if (*cmd_cluster) {
            auto d = distance_from_csv(read_file(cluster.distances));
            auto dend = ward_linkage(
                d, cluster.squared ? WardVariant::Squared : WardVariant::Direct);
            if (cluster.format == "newick")
                write_file(cluster.out, to_newick(dend) + "\n");
            else if (cluster.format == "json")
                write_file(cluster.out, dendrogram_to_json(dend));
            else
                write_file(cluster.out, dendrogram_to_svg(dend));
            if (!cluster.assign.empty())
                write_file(cluster.assign, assignment_to_csv(cut_k(dend, cluster.k)));
            std::cout << "AC " << agglomerative_coefficient(dend)
                      << (dend.monotone ? "" : " (height inversion present)") << "\n";
        } else if (*cmd_purity) {
            auto assign = assignment_from_csv(read_file(purity_assign));
            std::map<std::string, std::string> reference;
            for (const auto& [id, cluster_id] : assign.clusters) {
                auto label = parse_label(id);
                auto value = label.field(purity_field);
                if (!value)
                    throw std::runtime_error("document '" + id + "' has no '" + purity_field +
                                             "' label");
                reference[id] = *value;
            }
            std::cout << cluster_purity(assign, reference) << "\n";
        } else if (*cmd_volatility) {
            ClusteringFamily family;
            for (const auto& path : vol_assignments)
                family.analyses.emplace_back(fs::path(path).stem().string(),
                                             assignment_from_csv(read_file(path)));
            auto report = volatility_report(family, {});
            if (!vol_out.empty())
                write_file(vol_out, volatility_to_csv(report));
            for (const auto& row : report.rows)
                std::cout << row.id << "\t" << csv::format_double(row.v) << "\n";
        } else if (*cmd_delta) {
            auto a = load_counts(delta_a, delta_field);
            auto b = load_counts(delta_b, delta_field);
            auto [spec_a, spec_b] = specific_entries(a, b);
            std::cout << "delta " << csv::format_double(corpus_delta(a, b)) << "\n"
                      << "specific_a " << csv::format_double(spec_a) << "\n"
                      << "specific_b " << csv::format_double(spec_b) << "\n";
        } else if (*cmd_run) {
            auto config = PipelineConfig::from_json(
                read_file(run_config), fs::path(run_config).parent_path().string());
            config.seed = seed_from_env(config.seed);
            auto result = run_pipeline(config, run_out);
            for (const auto& analysis : result.analyses) {
                std::cout << analysis.name << ": " << analysis.matrix.n_features()
                          << " features, AC " << analysis.ac;
                if (analysis.purity)
                    std::cout << ", purity " << *analysis.purity;
                std::cout << "\n";
            }
            std::cout << result.exclusions.size() << " documents excluded; outputs in "
                      << run_out << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
