#include "stylokit/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stylokit/csv.hpp"

namespace stylokit {

std::vector<double> mirror_extend(const std::vector<double>& column) {
    if (column.empty())
        throw std::runtime_error("cannot mirror an empty column");
    auto [min_it, max_it] = std::minmax_element(column.begin(), column.end());
    double pivot = *min_it + *max_it;
    std::vector<double> out;
    out.reserve(column.size() * 2);
    out = column;
    for (double v : column)
        out.push_back(pivot - v);
    return out;
}

FeatureColumnStats min_reliable_size(const std::vector<double>& column,
                                     const ReliabilityParams& params) {
    auto mirrored = mirror_extend(column);
    double mean = 0.0;
    for (double v : mirrored)
        mean += v;
    mean /= static_cast<double>(mirrored.size());
    double var = 0.0;
    for (double v : mirrored)
        var += (v - mean) * (v - mean);
    var /= static_cast<double>(mirrored.size());
    FeatureColumnStats stats;
    stats.p_bar = mean;
    stats.sigma = std::sqrt(var);
    if (stats.sigma <= 0.0) {
        stats.n_min = std::numeric_limits<double>::infinity();
        stats.reliable = false;
        return stats;
    }
    double e = 2.0 * stats.sigma;
    double ratio = params.z / e;
    stats.n_min = stats.p_bar * (1.0 - stats.p_bar) * ratio * ratio;
    stats.reliable = true;
    return stats;
}

std::size_t smallest_basis(const FrequencyMatrix& matrix) {
    if (matrix.bases.empty())
        throw std::runtime_error("matrix carries no per-document bases");
    return *std::min_element(matrix.bases.begin(), matrix.bases.end());
}

FrequencyMatrix moisl_filter(const FrequencyMatrix& matrix, const ReliabilityParams& params,
                             std::vector<SelectionRow>* report) {
    std::vector<size_t> kept;
    for (size_t f = 0; f < matrix.n_features(); ++f) {
        std::vector<double> column(matrix.n_docs());
        for (size_t d = 0; d < matrix.n_docs(); ++d)
            column[d] = matrix.at(d, f);
        auto stats = min_reliable_size(column, params);
        bool keep = stats.reliable && stats.n_min <= static_cast<double>(params.smallest_size);
        if (keep)
            kept.push_back(f);
        if (report)
            report->push_back(SelectionRow{matrix.features[f], stats, keep});
    }
    if (kept.empty())
        throw std::runtime_error("no reliable features survive the filter");
    FrequencyMatrix out;
    out.doc_ids = matrix.doc_ids;
    out.bases = matrix.bases;
    for (size_t f : kept)
        out.features.push_back(matrix.features[f]);
    out.values.reserve(matrix.n_docs() * kept.size());
    for (size_t d = 0; d < matrix.n_docs(); ++d)
        for (size_t f : kept)
            out.values.push_back(matrix.at(d, f));
    return out;
}

std::string selection_report_to_csv(const std::vector<SelectionRow>& report) {
    std::string out = "feature,family,p_bar,sigma,n_min,kept\n";
    for (const auto& row : report) {
        out += csv::join_row({row.feature.key, family_name(row.feature.family),
                              csv::format_double(row.stats.p_bar),
                              csv::format_double(row.stats.sigma),
                              row.stats.reliable ? csv::format_double(row.stats.n_min) : "inf",
                              row.kept ? "1" : "0"});
        out.push_back('\n');
    }
    return out;
}

} // namespace stylokit
