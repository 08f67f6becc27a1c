#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stylokit/clustering.hpp"
#include "stylokit/features.hpp"

namespace stylokit {

struct ClusteringFamily {
    std::vector<std::pair<std::string, Assignment>> analyses;

    std::size_t n_analyses() const { return analyses.size(); }
};

struct VolatilityRow {
    std::string id;
    double v = 0.0;
    std::size_t neighborhood_size = 0;
    std::size_t n_words = 0;
};

struct VolatilityReport {
    std::vector<VolatilityRow> rows; // sorted ascending by v
};

struct CorpusDeltaReport {
    double delta = 0.0;
    double specific_a = 0.0;
    double specific_b = 0.0;
};

struct RegressionResult {
    double slope = 0.0;
    double intercept = 0.0;
    double pearson_r = 0.0;
    double p_perm = 1.0;
    std::uint64_t seed = 0;
    std::size_t n_permutations = 0;
};

// Fraction of documents in their cluster's majority reference class.
double cluster_purity(const Assignment& assign,
                      const std::map<std::string, std::string>& reference);

// Neighborhood-stability score in [-1, 1]; 1 means the document keeps an
// identical set of cluster companions across every analysis.
double volatility(const ClusteringFamily& family, const std::string& doc_id);

VolatilityReport volatility_report(const ClusteringFamily& family,
                                   const std::map<std::string, std::size_t>& n_words);

// Relative accumulated count difference over the union of keys, normalized
// by the total count of A.
double corpus_delta(const FeatureCounts& a, const FeatureCounts& b);

// Mass of keys present in one side but absent from the other, as a fraction
// of each side's own total.
std::pair<double, double> specific_entries(const FeatureCounts& a, const FeatureCounts& b);

// OLS of V on n_words with a seeded two-sided permutation test on Pearson r.
RegressionResult volatility_length_relation(const VolatilityReport& report,
                                            std::uint64_t seed = 412,
                                            std::size_t n_permutations = 10000);

std::string volatility_to_csv(const VolatilityReport& report);
std::string volatility_to_json(const VolatilityReport& report);

} // namespace stylokit
