#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "stylokit/reliability.hpp"

using namespace stylokit;

namespace {

// Brute-force restatement of the reliability computation, kept deliberately
// separate from the library path: explicit mirror construction, two-pass
// mean/variance, direct formula.
double oracle_n_min(const std::vector<double>& column, double z, bool* reliable) {
    double lo = *std::min_element(column.begin(), column.end());
    double hi = *std::max_element(column.begin(), column.end());
    std::vector<double> doubled;
    for (double v : column)
        doubled.push_back(v);
    for (double v : column)
        doubled.push_back(lo + hi - v);
    double mean = 0;
    for (double v : doubled)
        mean += v;
    mean /= doubled.size();
    double var = 0;
    for (double v : doubled)
        var += (v - mean) * (v - mean);
    var /= doubled.size();
    if (var == 0.0) {
        *reliable = false;
        return 0.0;
    }
    *reliable = true;
    double e = 2.0 * std::sqrt(var);
    return mean * (1.0 - mean) * (z / e) * (z / e);
}

FrequencyMatrix matrix_of(const std::vector<std::vector<double>>& rows) {
    FrequencyMatrix m;
    size_t nf = rows[0].size();
    for (size_t d = 0; d < rows.size(); ++d)
        m.doc_ids.push_back("doc" + std::to_string(d));
    for (size_t f = 0; f < nf; ++f)
        m.features.push_back(FeatureId{FeatureFamily::Form, "f" + std::to_string(f)});
    for (const auto& row : rows)
        m.values.insert(m.values.end(), row.begin(), row.end());
    m.bases.assign(rows.size(), 100);
    return m;
}

} // namespace

TEST_CASE("mirror_extend reflects about max+min") {
    auto out = mirror_extend({0.01, 0.02, 0.03});
    std::vector<double> expected{0.01, 0.02, 0.03, 0.03, 0.02, 0.01};
    REQUIRE(out.size() == 6);
    for (size_t i = 0; i < 6; ++i)
        CHECK(out[i] == doctest::Approx(expected[i]).epsilon(1e-15));

    auto constant = mirror_extend({0.5, 0.5, 0.5});
    CHECK(constant == std::vector<double>(6, 0.5));

    CHECK(mirror_extend({0.0}) == std::vector<double>{0.0, 0.0});
}

TEST_CASE("mirrored column is symmetric about (max+min)/2") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> dist(0.0, 0.2);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> column(2 + rng() % 10);
        for (double& v : column)
            v = dist(rng);
        auto out = mirror_extend(column);
        double lo = *std::min_element(column.begin(), column.end());
        double hi = *std::max_element(column.begin(), column.end());
        double mean = 0;
        for (double v : out)
            mean += v;
        mean /= out.size();
        CHECK(mean == doctest::Approx((lo + hi) / 2).epsilon(1e-12));
        // each value's reflection is present at the mirrored position
        for (size_t i = 0; i < column.size(); ++i)
            CHECK(out[column.size() + i] == doctest::Approx(lo + hi - column[i]).epsilon(1e-15));
    }
}

TEST_CASE("min_reliable_size reproduces the hand-checked column") {
    // mirrored column [.01,.02,.03,.03,.02,.01]: mean .02, var 4*(.01)^2/6
    ReliabilityParams params;
    auto stats = min_reliable_size({0.01, 0.02, 0.03}, params);
    CHECK(stats.p_bar == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(stats.sigma == doctest::Approx(std::sqrt(4.0 * 0.0001 / 6.0)).epsilon(1e-12));
    CHECK(stats.sigma == doctest::Approx(0.008165).epsilon(1e-4));
    CHECK(stats.n_min == doctest::Approx(198.9).epsilon(1e-3));
    CHECK(stats.reliable);
}

TEST_CASE("degenerate columns are flagged unreliable, not errors") {
    ReliabilityParams params;
    CHECK(!min_reliable_size({0.3, 0.3, 0.3}, params).reliable);
    CHECK(!min_reliable_size({0.0, 0.0}, params).reliable);
    CHECK(std::isinf(min_reliable_size({0.0, 0.0}, params).n_min));
}

TEST_CASE("min_reliable_size is permutation invariant") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dist(0.0, 0.1);
    ReliabilityParams params;
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> column(3 + rng() % 8);
        for (double& v : column)
            v = dist(rng);
        auto base = min_reliable_size(column, params);
        std::shuffle(column.begin(), column.end(), rng);
        auto permuted = min_reliable_size(column, params);
        CHECK(permuted.n_min == doctest::Approx(base.n_min).epsilon(1e-12));
        CHECK(permuted.sigma == doctest::Approx(base.sigma).epsilon(1e-12));
    }
}

TEST_CASE("moisl_filter keeps exactly the features the oracle keeps") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> dist(0.0, 0.05);
    for (int trial = 0; trial < 100; ++trial) {
        size_t nd = 2 + rng() % 10;
        size_t nf = 1 + rng() % 20;
        std::vector<std::vector<double>> rows(nd, std::vector<double>(nf));
        for (auto& row : rows)
            for (double& v : row)
                v = rng() % 4 == 0 ? 0.0 : dist(rng);
        auto m = matrix_of(rows);
        ReliabilityParams params;
        params.smallest_size = 50 + rng() % 300;
        std::vector<SelectionRow> report;
        FrequencyMatrix kept;
        std::vector<std::string> expected_keys;
        for (size_t f = 0; f < nf; ++f) {
            std::vector<double> column;
            for (size_t d = 0; d < nd; ++d)
                column.push_back(rows[d][f]);
            bool reliable = false;
            double n_min = oracle_n_min(column, params.z, &reliable);
            if (reliable && n_min <= static_cast<double>(params.smallest_size))
                expected_keys.push_back(m.features[f].key);
        }
        if (expected_keys.empty()) {
            CHECK_THROWS(moisl_filter(m, params));
            continue;
        }
        kept = moisl_filter(m, params, &report);
        std::vector<std::string> got;
        for (const auto& feat : kept.features)
            got.push_back(feat.key);
        CHECK(got == expected_keys);
        CHECK(report.size() == nf);
    }
}

TEST_CASE("filter is monotone in z") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> dist(0.0, 0.05);
    for (int trial = 0; trial < 30; ++trial) {
        size_t nd = 3 + rng() % 8;
        size_t nf = 5 + rng() % 15;
        std::vector<std::vector<double>> rows(nd, std::vector<double>(nf));
        for (auto& row : rows)
            for (double& v : row)
                v = dist(rng);
        auto m = matrix_of(rows);
        ReliabilityParams small_z{1.0, 150};
        ReliabilityParams large_z{2.5, 150};
        std::vector<SelectionRow> rep_small, rep_large;
        try {
            moisl_filter(m, small_z, &rep_small);
        } catch (const std::exception&) {
        }
        try {
            moisl_filter(m, large_z, &rep_large);
        } catch (const std::exception&) {
        }
        if (rep_small.empty() || rep_large.empty())
            continue;
        for (size_t f = 0; f < nf; ++f)
            if (rep_large[f].kept)
                CHECK(rep_small[f].kept);
    }
}

TEST_CASE("kept feature from the worked example survives a 1014-token smallest text") {
    ReliabilityParams params;
    params.smallest_size = 1014;
    auto m = matrix_of({{0.01}, {0.02}, {0.03}});
    auto kept = moisl_filter(m, params);
    CHECK(kept.n_features() == 1); // n_min ~ 199 <= 1014
}

TEST_CASE("filter-then-concatenate widths are additive") {
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> dist(0.0, 0.05);
    auto random_matrix = [&](size_t nf) {
        std::vector<std::vector<double>> rows(4, std::vector<double>(nf));
        for (auto& row : rows)
            for (double& v : row)
                v = dist(rng);
        return matrix_of(rows);
    };
    ReliabilityParams params;
    params.smallest_size = 200;
    std::vector<FrequencyMatrix> filtered;
    size_t width_sum = 0;
    for (size_t nf : {12, 7, 9}) {
        auto kept = moisl_filter(random_matrix(nf), params);
        width_sum += kept.n_features();
        filtered.push_back(kept);
    }
    CHECK(concat_matrices(filtered).n_features() == width_sum);
}
