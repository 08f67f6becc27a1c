#include "stylokit/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "stylokit/csv.hpp"

namespace stylokit {

Dendrogram ward_linkage(const DistanceMatrix& d, WardVariant variant) {
    size_t n = d.size();
    if (n < 2)
        throw std::runtime_error("clustering needs at least 2 documents");
    validate_distance_matrix(d);

    size_t total = 2 * n - 1;
    // Dissimilarities between active nodes, indexed by creation order.
    std::vector<double> diss(total * total, 0.0);
    std::vector<size_t> sizes(total, 0);
    std::vector<bool> active(total, false);
    for (size_t a = 0; a < n; ++a) {
        active[a] = true;
        sizes[a] = 1;
        for (size_t b = 0; b < n; ++b) {
            double v = d.at(a, b);
            diss[a * total + b] = variant == WardVariant::Squared ? v * v : v;
        }
    }

    Dendrogram dend;
    dend.leaves = d.doc_ids;
    dend.merges.reserve(n - 1);
    double last_height = 0.0;
    size_t next_id = n;
    for (size_t step = 0; step + 1 < n; ++step) {
        // Ties break on the smallest (left, right) creation-index pair;
        // scanning in ascending order with a strict < keeps the first hit.
        size_t best_a = total, best_b = total;
        double best = std::numeric_limits<double>::infinity();
        for (size_t a = 0; a < next_id; ++a) {
            if (!active[a])
                continue;
            for (size_t b = a + 1; b < next_id; ++b) {
                if (!active[b])
                    continue;
                double v = diss[a * total + b];
                if (v < best) {
                    best = v;
                    best_a = a;
                    best_b = b;
                }
            }
        }
        size_t i = best_a, j = best_b;
        size_t merged = next_id++;
        double height = variant == WardVariant::Squared ? std::sqrt(best) : best;
        if (height < last_height)
            dend.monotone = false;
        last_height = std::max(last_height, height);
        sizes[merged] = sizes[i] + sizes[j];
        active[i] = false;
        active[j] = false;
        active[merged] = true;
        double ni = static_cast<double>(sizes[i]);
        double nj = static_cast<double>(sizes[j]);
        for (size_t k = 0; k < merged; ++k) {
            if (!active[k])
                continue;
            double nk = static_cast<double>(sizes[k]);
            double denom = ni + nj + nk;
            double v = ((ni + nk) * diss[i * total + k] + (nj + nk) * diss[j * total + k] -
                        nk * diss[i * total + j]) /
                       denom;
            diss[merged * total + k] = v;
            diss[k * total + merged] = v;
        }
        dend.merges.push_back(Merge{i, j, height, sizes[merged]});
    }
    return dend;
}

double agglomerative_coefficient(const Dendrogram& dend) {
    size_t n = dend.n_leaves();
    if (n < 2 || dend.merges.empty())
        throw std::runtime_error("agglomerative coefficient needs at least 2 leaves");
    double h_final = dend.merges.back().height;
    if (h_final <= 0.0)
        throw std::runtime_error("degenerate dendrogram: final merge height is 0");
    // Each leaf occurs exactly once as a direct merge child; that merge's
    // height is its first-merge height.
    std::vector<double> first(n, -1.0);
    for (const auto& m : dend.merges) {
        if (m.left < n)
            first[m.left] = m.height;
        if (m.right < n)
            first[m.right] = m.height;
    }
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i)
        sum += 1.0 - first[i] / h_final;
    return sum / static_cast<double>(n);
}

Assignment cut_k(const Dendrogram& dend, std::size_t k) {
    size_t n = dend.n_leaves();
    if (k < 1 || k > n)
        throw std::runtime_error("k must be in [1, " + std::to_string(n) + "]");
    // Union over all but the last k-1 merges.
    std::vector<size_t> parent(2 * n - 1);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<size_t(size_t)> find = [&](size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    size_t applied = n - k;
    for (size_t m = 0; m < applied; ++m) {
        size_t node = n + m;
        parent[find(dend.merges[m].left)] = node;
        parent[find(dend.merges[m].right)] = node;
    }
    // Cluster indices ordered by smallest member leaf: number roots by
    // first appearance while walking leaves in order.
    std::map<size_t, size_t> numbered;
    Assignment assign;
    assign.k = k;
    for (size_t leaf = 0; leaf < n; ++leaf) {
        size_t root = find(leaf);
        auto it = numbered.find(root);
        if (it == numbered.end())
            it = numbered.emplace(root, numbered.size()).first;
        assign.clusters[dend.leaves[leaf]] = it->second;
    }
    if (numbered.size() != k)
        throw std::runtime_error("cut produced wrong cluster count");
    return assign;
}

namespace {

std::string format_branch_length(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    std::string s(buf);
    s.erase(s.find_last_not_of('0') + 1);
    if (!s.empty() && s.back() == '.')
        s.pop_back();
    return s;
}

std::string newick_label(const std::string& label) {
    if (label.find_first_of(" (),:;'\t\n[]") == std::string::npos)
        return label;
    std::string out = "'";
    for (char c : label) {
        if (c == '\'')
            out += "''";
        else
            out.push_back(c);
    }
    out.push_back('\'');
    return out;
}

size_t min_leaf(const Dendrogram& dend, size_t node) {
    size_t n = dend.n_leaves();
    if (node < n)
        return node;
    const Merge& m = dend.merges[node - n];
    return std::min(min_leaf(dend, m.left), min_leaf(dend, m.right));
}

// Children are emitted with the subtree containing the smallest leaf first,
// so the leaf order in the output is stable across runs.
void write_newick_node(const Dendrogram& dend, size_t node, double parent_height,
                       std::string& out) {
    size_t n = dend.n_leaves();
    double height = node < n ? 0.0 : dend.merges[node - n].height;
    if (node < n) {
        out += newick_label(dend.leaves[node]);
    } else {
        const Merge& m = dend.merges[node - n];
        size_t first = m.left, second = m.right;
        if (min_leaf(dend, second) < min_leaf(dend, first))
            std::swap(first, second);
        out.push_back('(');
        write_newick_node(dend, first, height, out);
        out.push_back(',');
        write_newick_node(dend, second, height, out);
        out.push_back(')');
    }
    out.push_back(':');
    out += format_branch_length(parent_height - height);
}

} // namespace

std::string to_newick(const Dendrogram& dend) {
    if (dend.merges.empty())
        throw std::runtime_error("empty dendrogram");
    std::string out;
    size_t n = dend.n_leaves();
    const Merge& m = dend.merges.back();
    double root_height = m.height;
    size_t first = m.left, second = m.right;
    if (min_leaf(dend, second) < min_leaf(dend, first))
        std::swap(first, second);
    out.push_back('(');
    write_newick_node(dend, first, root_height, out);
    out.push_back(',');
    write_newick_node(dend, second, root_height, out);
    out += ");";
    return out;
}

std::string dendrogram_to_json(const Dendrogram& dend) {
    nlohmann::json j;
    j["leaves"] = dend.leaves;
    j["merges"] = nlohmann::json::array();
    for (const auto& m : dend.merges)
        j["merges"].push_back(
            {{"l", m.left}, {"r", m.right}, {"h", m.height}, {"size", m.size}});
    j["monotone"] = dend.monotone;
    return j.dump(2) + "\n";
}

Dendrogram dendrogram_from_json(const std::string& content) {
    auto j = nlohmann::json::parse(content);
    Dendrogram dend;
    dend.leaves = j.at("leaves").get<std::vector<std::string>>();
    for (const auto& m : j.at("merges"))
        dend.merges.push_back(Merge{m.at("l").get<size_t>(), m.at("r").get<size_t>(),
                                    m.at("h").get<double>(), m.at("size").get<size_t>()});
    dend.monotone = j.value("monotone", true);
    if (dend.merges.size() + 1 != dend.leaves.size())
        throw std::runtime_error("dendrogram JSON: merge count does not match leaf count");
    return dend;
}

namespace {

void leaf_order_walk(const Dendrogram& dend, size_t node, std::vector<size_t>& order) {
    size_t n = dend.n_leaves();
    if (node < n) {
        order.push_back(node);
        return;
    }
    const Merge& m = dend.merges[node - n];
    size_t first = m.left, second = m.right;
    if (min_leaf(dend, second) < min_leaf(dend, first))
        std::swap(first, second);
    leaf_order_walk(dend, first, order);
    leaf_order_walk(dend, second, order);
}

} // namespace

std::string dendrogram_to_svg(const Dendrogram& dend) {
    size_t n = dend.n_leaves();
    if (dend.merges.empty())
        throw std::runtime_error("empty dendrogram");
    std::vector<size_t> order;
    leaf_order_walk(dend, n + dend.merges.size() - 1, order);

    const double row_h = 18.0, label_w = 220.0, tree_w = 520.0, margin = 10.0;
    double h_max = dend.merges.back().height;
    for (const auto& m : dend.merges)
        h_max = std::max(h_max, m.height);
    if (h_max <= 0.0)
        h_max = 1.0;
    double height_px = margin * 2 + row_h * static_cast<double>(n);
    double width_px = margin * 2 + tree_w + label_w;
    // x grows leftward with merge height; leaves sit at the right edge of
    // the tree area, labels to their right.
    auto x_of = [&](double h) { return margin + tree_w * (1.0 - h / h_max); };

    std::vector<double> y(2 * n - 1, 0.0), x(2 * n - 1, 0.0);
    for (size_t i = 0; i < order.size(); ++i) {
        y[order[i]] = margin + row_h * (static_cast<double>(i) + 0.5);
        x[order[i]] = x_of(0.0);
    }
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_px << "\" height=\""
        << height_px << "\" font-family=\"monospace\" font-size=\"11\">\n";
    for (size_t mi = 0; mi < dend.merges.size(); ++mi) {
        const Merge& m = dend.merges[mi];
        size_t node = n + mi;
        double xm = x_of(m.height);
        y[node] = (y[m.left] + y[m.right]) / 2.0;
        x[node] = xm;
        auto line = [&](double x1, double y1, double x2, double y2) {
            svg << "  <line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\""
                << y2 << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        };
        line(xm, y[m.left], x[m.left], y[m.left]);
        line(xm, y[m.right], x[m.right], y[m.right]);
        line(xm, y[m.left], xm, y[m.right]);
    }
    for (size_t leaf = 0; leaf < n; ++leaf) {
        std::string esc;
        for (char c : dend.leaves[leaf]) {
            switch (c) {
            case '&': esc += "&amp;"; break;
            case '<': esc += "&lt;"; break;
            case '>': esc += "&gt;"; break;
            default: esc.push_back(c);
            }
        }
        svg << "  <text x=\"" << x_of(0.0) + 4.0 << "\" y=\"" << y[leaf] + 4.0 << "\">" << esc
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string assignment_to_csv(const Assignment& assign) {
    std::string out = "doc_id,cluster\n";
    for (const auto& [id, cluster] : assign.clusters) {
        out += csv::escape_field(id);
        out.push_back(',');
        out += std::to_string(cluster);
        out.push_back('\n');
    }
    return out;
}

Assignment assignment_from_csv(const std::string& content) {
    std::istringstream in(content);
    std::string line;
    if (!std::getline(in, line) || csv::split_row(line) != std::vector<std::string>{"doc_id", "cluster"})
        throw std::runtime_error("assignment CSV must start with 'doc_id,cluster'");
    Assignment assign;
    size_t max_cluster = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        auto row = csv::split_row(line);
        if (row.size() != 2)
            throw std::runtime_error("assignment CSV row must have 2 fields");
        size_t cluster = std::stoul(row[1]);
        assign.clusters[row[0]] = cluster;
        max_cluster = std::max(max_cluster, cluster);
    }
    if (assign.clusters.empty())
        throw std::runtime_error("assignment CSV has no rows");
    assign.k = max_cluster + 1;
    return assign;
}

} // namespace stylokit
