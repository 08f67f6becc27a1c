#include "stylokit/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "stylokit/csv.hpp"

namespace stylokit {

double cluster_purity(const Assignment& assign,
                      const std::map<std::string, std::string>& reference) {
    if (assign.clusters.empty())
        throw std::runtime_error("empty assignment");
    std::vector<std::string> missing;
    for (const auto& [id, cluster] : assign.clusters)
        if (!reference.count(id))
            missing.push_back(id);
    if (!missing.empty()) {
        std::ostringstream err;
        err << "documents without reference label:";
        for (const auto& id : missing)
            err << ' ' << id;
        throw std::runtime_error(err.str());
    }
    // cluster -> class -> count
    std::map<std::size_t, std::map<std::string, std::size_t>> tally;
    for (const auto& [id, cluster] : assign.clusters)
        ++tally[cluster][reference.at(id)];
    std::size_t majority_sum = 0;
    for (const auto& [cluster, classes] : tally) {
        std::size_t best = 0;
        for (const auto& [cls, count] : classes)
            best = std::max(best, count);
        majority_sum += best;
    }
    return static_cast<double>(majority_sum) / static_cast<double>(assign.clusters.size());
}

double volatility(const ClusteringFamily& family, const std::string& doc_id) {
    if (family.analyses.empty())
        throw std::runtime_error("volatility needs at least one analysis");
    std::size_t J = family.n_analyses();
    // Member sets of the clusters containing doc_id, one per analysis.
    std::vector<std::set<std::string>> groups;
    groups.reserve(J);
    for (const auto& [name, assign] : family.analyses) {
        auto it = assign.clusters.find(doc_id);
        if (it == assign.clusters.end())
            throw std::runtime_error("document '" + doc_id + "' absent from analysis '" + name +
                                     "'");
        std::size_t cluster = it->second;
        std::set<std::string> members;
        for (const auto& [id, c] : assign.clusters)
            if (c == cluster)
                members.insert(id);
        groups.push_back(std::move(members));
    }
    std::set<std::string> neighborhood;
    for (const auto& g : groups)
        neighborhood.insert(g.begin(), g.end());
    double sum = 0.0;
    for (const auto& x : neighborhood) {
        std::size_t in = 0;
        for (const auto& g : groups)
            if (g.count(x))
                ++in;
        std::size_t out = J - in;
        sum += (static_cast<double>(in) - static_cast<double>(out)) / static_cast<double>(J);
    }
    return sum / static_cast<double>(neighborhood.size());
}

VolatilityReport volatility_report(const ClusteringFamily& family,
                                   const std::map<std::string, std::size_t>& n_words) {
    if (family.analyses.empty())
        throw std::runtime_error("volatility needs at least one analysis");
    VolatilityReport report;
    for (const auto& [id, cluster] : family.analyses.front().second.clusters) {
        VolatilityRow row;
        row.id = id;
        row.v = volatility(family, id);
        std::set<std::string> neighborhood;
        for (const auto& [name, assign] : family.analyses) {
            std::size_t c = assign.clusters.at(id);
            for (const auto& [other, oc] : assign.clusters)
                if (oc == c)
                    neighborhood.insert(other);
        }
        row.neighborhood_size = neighborhood.size();
        auto it = n_words.find(id);
        row.n_words = it != n_words.end() ? it->second : 0;
        report.rows.push_back(std::move(row));
    }
    std::stable_sort(report.rows.begin(), report.rows.end(),
                     [](const VolatilityRow& a, const VolatilityRow& b) { return a.v < b.v; });
    return report;
}

namespace {

double total_count(const FeatureCounts& fc) {
    double sum = 0.0;
    for (const auto& [key, count] : fc.counts)
        sum += static_cast<double>(count);
    return sum;
}

} // namespace

double corpus_delta(const FeatureCounts& a, const FeatureCounts& b) {
    double total_a = total_count(a);
    if (total_a <= 0.0)
        throw std::runtime_error("corpus delta: reference side A is empty");
    std::set<std::string> keys;
    for (const auto& [k, c] : a.counts)
        keys.insert(k);
    for (const auto& [k, c] : b.counts)
        keys.insert(k);
    double diff = 0.0;
    for (const auto& k : keys) {
        auto ia = a.counts.find(k);
        auto ib = b.counts.find(k);
        double ca = ia != a.counts.end() ? static_cast<double>(ia->second) : 0.0;
        double cb = ib != b.counts.end() ? static_cast<double>(ib->second) : 0.0;
        diff += std::abs(ca - cb);
    }
    return diff / total_a;
}

std::pair<double, double> specific_entries(const FeatureCounts& a, const FeatureCounts& b) {
    double total_a = total_count(a);
    double total_b = total_count(b);
    if (total_a <= 0.0 || total_b <= 0.0)
        throw std::runtime_error("specific entries: empty input");
    double only_a = 0.0, only_b = 0.0;
    for (const auto& [k, c] : a.counts)
        if (!b.counts.count(k))
            only_a += static_cast<double>(c);
    for (const auto& [k, c] : b.counts)
        if (!a.counts.count(k))
            only_b += static_cast<double>(c);
    return {only_a / total_a, only_b / total_b};
}

RegressionResult volatility_length_relation(const VolatilityReport& report, std::uint64_t seed,
                                            std::size_t n_permutations) {
    std::size_t n = report.rows.size();
    if (n < 3)
        throw std::runtime_error("regression needs at least 3 documents");
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<double>(report.rows[i].n_words);
        y[i] = report.rows[i].v;
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx <= 0.0)
        throw std::runtime_error("regression needs varying document lengths");
    RegressionResult res;
    res.seed = seed;
    res.n_permutations = n_permutations;
    res.slope = sxy / sxx;
    res.intercept = my - res.slope * mx;
    res.pearson_r = syy > 0.0 ? sxy / std::sqrt(sxx * syy) : 0.0;

    double observed = std::abs(res.pearson_r);
    std::mt19937_64 rng(seed);
    std::vector<double> shuffled = y;
    std::size_t at_least = 0;
    for (std::size_t p = 0; p < n_permutations; ++p) {
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        double s = 0.0, m = 0.0, v = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            m += shuffled[i];
        m /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            s += (x[i] - mx) * (shuffled[i] - m);
            v += (shuffled[i] - m) * (shuffled[i] - m);
        }
        double r = v > 0.0 ? s / std::sqrt(sxx * v) : 0.0;
        if (std::abs(r) >= observed - 1e-12)
            ++at_least;
    }
    res.p_perm = static_cast<double>(at_least + 1) / static_cast<double>(n_permutations + 1);
    return res;
}

std::string volatility_to_csv(const VolatilityReport& report) {
    std::string out = "id,n_words,neighborhood,V\n";
    for (const auto& row : report.rows) {
        out += csv::join_row({row.id, std::to_string(row.n_words),
                              std::to_string(row.neighborhood_size), csv::format_double(row.v)});
        out.push_back('\n');
    }
    return out;
}

std::string volatility_to_json(const VolatilityReport& report) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : report.rows)
        arr.push_back({{"id", row.id},
                       {"n_words", row.n_words},
                       {"neighborhood", row.neighborhood_size},
                       {"V", row.v}});
    return arr.dump(2) + "\n";
}

} // namespace stylokit
