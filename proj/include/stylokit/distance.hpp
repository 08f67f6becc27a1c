#pragma once

#include <string>
#include <vector>

#include "stylokit/features.hpp"

namespace stylokit {

struct DistanceMatrix {
    std::vector<std::string> doc_ids;
    std::vector<double> values; // row-major, symmetric, zero diagonal

    std::size_t size() const { return doc_ids.size(); }
    double at(std::size_t a, std::size_t b) const { return values[a * doc_ids.size() + b]; }
    double& at(std::size_t a, std::size_t b) { return values[a * doc_ids.size() + b]; }
};

// Per-feature standardization: (v - column mean) / column population sigma.
FrequencyMatrix z_transform(const FrequencyMatrix& matrix);

// Divides each document row by its Euclidean norm.
FrequencyMatrix unit_normalize(const FrequencyMatrix& matrix);

DistanceMatrix manhattan_matrix(const FrequencyMatrix& matrix);

// The full Burrows'-Delta construction: z-scores, vector-length
// normalization, Manhattan distances, in that order.
DistanceMatrix delta_distances(const FrequencyMatrix& matrix);

void validate_distance_matrix(const DistanceMatrix& d);

std::string distance_to_csv(const DistanceMatrix& d);
DistanceMatrix distance_from_csv(const std::string& content);

} // namespace stylokit
