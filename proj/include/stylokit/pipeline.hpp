#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stylokit/clustering.hpp"
#include "stylokit/corpus.hpp"
#include "stylokit/distance.hpp"
#include "stylokit/evaluation.hpp"
#include "stylokit/reliability.hpp"

namespace stylokit {

struct FamilySpec {
    FeatureFamily family;
    std::size_t n = 3; // n-gram / affix width
};

struct AnalysisSpec {
    std::string name;
    std::vector<FamilySpec> families;
    std::size_t min_words = 1000;
    double z = 1.645;
    std::size_t k = 5;
};

struct PipelineConfig {
    std::string raw_dir;
    std::string annotated_dir;
    std::size_t min_words = 1000;
    bool count_punctuation = false;
    LabelSchema schema = LabelSchema::default_schema();
    std::string reference_field = "author";
    std::vector<AnalysisSpec> analyses;
    std::uint64_t seed = 412;

    static PipelineConfig from_json(const std::string& content,
                                    const std::string& base_dir = ".");
};

struct AnalysisResult {
    std::string name;
    FrequencyMatrix matrix; // filtered (and concatenated, for multi-family specs)
    std::vector<SelectionRow> selection;
    DistanceMatrix distances;
    Dendrogram dendrogram;
    Assignment assignment;
    std::optional<double> purity;
    double ac = 0.0;
};

struct PipelineResult {
    std::vector<Exclusion> exclusions;
    std::vector<AnalysisResult> analyses;
    VolatilityReport volatility;
    std::optional<RegressionResult> regression;
};

// Config-file spelling of a feature family ("char_ngram", "affix", ...).
FeatureFamily family_from_config_name(const std::string& name);

Extractor make_extractor(const FamilySpec& spec, const CorpusConfig& cfg);

// Filter -> per-family matrix -> reliability filter -> concat -> Delta
// distances -> Ward -> cut -> purity/AC. The corpus must already be
// length-filtered (the runner filters once so every analysis sees the same
// documents).
AnalysisResult run_analysis(const Corpus& corpus, const AnalysisSpec& spec,
                            const std::string& reference_field,
                            const CorpusConfig& cfg = {});

PipelineResult run_family_of_analyses(const Corpus& corpus, const PipelineConfig& config);

// Runs the config end to end and writes every artifact under out_dir,
// one subdirectory per analysis.
PipelineResult run_pipeline(const PipelineConfig& config, const std::string& out_dir);

} // namespace stylokit
