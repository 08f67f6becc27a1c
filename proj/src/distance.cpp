#include "stylokit/distance.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "stylokit/csv.hpp"

namespace stylokit {

FrequencyMatrix z_transform(const FrequencyMatrix& matrix) {
    size_t nd = matrix.n_docs();
    size_t nf = matrix.n_features();
    if (nd == 0 || nf == 0)
        throw std::runtime_error("cannot standardize an empty matrix");
    FrequencyMatrix out = matrix;
    for (size_t f = 0; f < nf; ++f) {
        double mean = 0.0;
        for (size_t d = 0; d < nd; ++d)
            mean += matrix.at(d, f);
        mean /= static_cast<double>(nd);
        double var = 0.0;
        for (size_t d = 0; d < nd; ++d) {
            double dev = matrix.at(d, f) - mean;
            var += dev * dev;
        }
        var /= static_cast<double>(nd);
        double sigma = std::sqrt(var);
        if (sigma <= 0.0)
            throw std::runtime_error("zero-variance column '" + matrix.features[f].key +
                                     "'; run the reliability filter first");
        for (size_t d = 0; d < nd; ++d)
            out.at(d, f) = (matrix.at(d, f) - mean) / sigma;
    }
    return out;
}

FrequencyMatrix unit_normalize(const FrequencyMatrix& matrix) {
    FrequencyMatrix out = matrix;
    size_t nf = matrix.n_features();
    for (size_t d = 0; d < matrix.n_docs(); ++d) {
        double sq = 0.0;
        for (size_t f = 0; f < nf; ++f)
            sq += matrix.at(d, f) * matrix.at(d, f);
        double norm = std::sqrt(sq);
        if (norm <= 0.0)
            throw std::runtime_error("zero feature vector for document '" + matrix.doc_ids[d] + "'");
        for (size_t f = 0; f < nf; ++f)
            out.at(d, f) = matrix.at(d, f) / norm;
    }
    return out;
}

DistanceMatrix manhattan_matrix(const FrequencyMatrix& matrix) {
    size_t nd = matrix.n_docs();
    if (nd < 2)
        throw std::runtime_error("distance matrix needs at least 2 documents");
    size_t nf = matrix.n_features();
    DistanceMatrix d;
    d.doc_ids = matrix.doc_ids;
    d.values.assign(nd * nd, 0.0);
    for (size_t a = 0; a < nd; ++a) {
        for (size_t b = a + 1; b < nd; ++b) {
            double sum = 0.0;
            for (size_t f = 0; f < nf; ++f)
                sum += std::abs(matrix.at(a, f) - matrix.at(b, f));
            d.at(a, b) = sum;
            d.at(b, a) = sum;
        }
    }
    return d;
}

DistanceMatrix delta_distances(const FrequencyMatrix& matrix) {
    return manhattan_matrix(unit_normalize(z_transform(matrix)));
}

void validate_distance_matrix(const DistanceMatrix& d) {
    size_t n = d.size();
    if (d.values.size() != n * n)
        throw std::runtime_error("distance matrix shape mismatch");
    for (size_t a = 0; a < n; ++a) {
        if (d.at(a, a) != 0.0)
            throw std::runtime_error("nonzero diagonal in distance matrix");
        for (size_t b = 0; b < n; ++b) {
            if (d.at(a, b) < 0.0)
                throw std::runtime_error("negative distance");
            if (std::abs(d.at(a, b) - d.at(b, a)) > 1e-12)
                throw std::runtime_error("asymmetric distance matrix");
        }
    }
}

std::string distance_to_csv(const DistanceMatrix& d) {
    std::string out;
    std::vector<std::string> header;
    header.emplace_back("id");
    for (const auto& id : d.doc_ids)
        header.push_back(id);
    out += csv::join_row(header);
    out.push_back('\n');
    for (size_t a = 0; a < d.size(); ++a) {
        std::vector<std::string> row;
        row.push_back(d.doc_ids[a]);
        for (size_t b = 0; b < d.size(); ++b)
            row.push_back(csv::format_double(d.at(a, b)));
        out += csv::join_row(row);
        out.push_back('\n');
    }
    return out;
}

DistanceMatrix distance_from_csv(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty distance CSV");
    auto header = csv::split_row(line);
    if (header.size() < 3 || header[0] != "id")
        throw std::runtime_error("distance CSV header must be 'id' plus at least 2 doc ids");
    DistanceMatrix d;
    d.doc_ids.assign(header.begin() + 1, header.end());
    size_t n = d.doc_ids.size();
    d.values.reserve(n * n);
    size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto row = csv::split_row(line);
        if (row.size() != n + 1)
            throw std::runtime_error("distance CSV row width mismatch");
        if (rows >= n || row[0] != d.doc_ids[rows])
            throw std::runtime_error("distance CSV row ids do not match header order");
        for (size_t i = 1; i < row.size(); ++i)
            d.values.push_back(std::stod(row[i]));
        ++rows;
    }
    if (rows != n)
        throw std::runtime_error("distance CSV is not square");
    validate_distance_matrix(d);
    return d;
}

} // namespace stylokit
