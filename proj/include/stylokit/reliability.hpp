#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stylokit/features.hpp"

namespace stylokit {

struct ReliabilityParams {
    double z = 1.645; // 90% confidence
    std::size_t smallest_size = 1; // family-basis size of the smallest document
};

struct FeatureColumnStats {
    double p_bar = 0.0;
    double sigma = 0.0;
    double n_min = 0.0; // +inf when the column is unreliable (sigma == 0)
    bool reliable = false;
};

struct SelectionRow {
    FeatureId feature;
    FeatureColumnStats stats;
    bool kept = false;
};

// Appends the reflection (max+min)-v of each entry to the column.
std::vector<double> mirror_extend(const std::vector<double>& column);

// Minimum reliable text size n = p(1-p)(z/e)^2 with e = 2*sigma, computed
// on the mirror-extended column. sigma here is the population standard
// deviation. A zero-variance column is flagged unreliable.
FeatureColumnStats min_reliable_size(const std::vector<double>& column,
                                     const ReliabilityParams& params);

// Keeps features whose minimum reliable size does not exceed the smallest
// document in the family; column order is preserved among survivors.
FrequencyMatrix moisl_filter(const FrequencyMatrix& matrix, const ReliabilityParams& params,
                             std::vector<SelectionRow>* report = nullptr);

// Smallest per-document family basis of a single-family matrix.
std::size_t smallest_basis(const FrequencyMatrix& matrix);

std::string selection_report_to_csv(const std::vector<SelectionRow>& report);

} // namespace stylokit
