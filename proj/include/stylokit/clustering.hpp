#pragma once

#include <map>
#include <string>
#include <vector>

#include "stylokit/distance.hpp"

namespace stylokit {

// Node ids: 0..n-1 are leaves, merge i creates node n+i.
struct Merge {
    std::size_t left;
    std::size_t right;
    double height;
    std::size_t size;
};

struct Dendrogram {
    std::vector<std::string> leaves;
    std::vector<Merge> merges;
    bool monotone = true; // heights nondecreasing; inversions are reported, not hidden

    std::size_t n_leaves() const { return leaves.size(); }
};

struct Assignment {
    std::map<std::string, std::size_t> clusters;
    std::size_t k = 0;
};

enum class WardVariant {
    Direct,  // Lance-Williams on the input dissimilarities as given ("ward.D")
    Squared, // recurrence on squared dissimilarities, heights square-rooted ("ward.D2")
};

Dendrogram ward_linkage(const DistanceMatrix& d, WardVariant variant = WardVariant::Direct);

// Kaufman-Rousseeuw agglomerative coefficient: mean over leaves of
// 1 - (first-merge height / final-merge height).
double agglomerative_coefficient(const Dendrogram& dend);

// Flat clustering from undoing the last k-1 merges; cluster indices are
// ordered by each cluster's smallest leaf.
Assignment cut_k(const Dendrogram& dend, std::size_t k);

std::string to_newick(const Dendrogram& dend);
std::string dendrogram_to_json(const Dendrogram& dend);
Dendrogram dendrogram_from_json(const std::string& content);
std::string dendrogram_to_svg(const Dendrogram& dend);

std::string assignment_to_csv(const Assignment& assign);
Assignment assignment_from_csv(const std::string& content);

} // namespace stylokit
