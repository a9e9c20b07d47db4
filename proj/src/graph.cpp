#include "oscillnet/graph.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace oscillnet::graph {

void validate(const WeightedDigraph& g) {
    if (g.n <= 0) {
        throw std::invalid_argument("graph: node count must be positive");
    }
    for (const Edge& e : g.edges) {
        if (e.source < 0 || e.source >= g.n || e.target < 0 || e.target >= g.n) {
            throw std::invalid_argument("graph: edge endpoint out of range");
        }
        if (e.source == e.target) {
            throw std::invalid_argument("graph: self-loops are not allowed");
        }
        if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
            throw std::invalid_argument("graph: edge weight must be finite and >= 0");
        }
    }
}

Eigen::MatrixXd build_laplacian(const WeightedDigraph& g) {
    validate(g);
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(g.n, g.n);
    for (const Edge& e : g.edges) {
        W(e.source, e.target) += e.weight;
    }
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(g.n, g.n);
    for (int i = 0; i < g.n; ++i) {
        // Accumulating the diagonal in the same ascending-j order as the
        // off-diagonals makes the construction-order row sum exactly 0:
        // the negated partial sums cancel term by term.
        double out = 0.0;
        for (int j = 0; j < g.n; ++j) {
            if (j == i) continue;
            L(i, j) = -W(i, j);
            out += W(i, j);
        }
        L(i, i) = out;
    }
    return L;
}

double laplacian_row_sum(const Eigen::MatrixXd& L, int row) {
    double s = 0.0;
    for (int j = 0; j < L.cols(); ++j) {
        if (j == row) continue;
        s += L(row, j);
    }
    return s + L(row, row);
}

namespace {

// Minimal union-find over node indices.
class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[b] = a;
    }

private:
    std::vector<int> parent_;
};

}  // namespace

std::vector<std::vector<int>> connected_components(const WeightedDigraph& g) {
    validate(g);
    DisjointSets sets(g.n);
    for (const Edge& e : g.edges) {
        if (e.weight > 0.0) sets.unite(e.source, e.target);
    }
    std::vector<std::vector<int>> by_root(g.n);
    for (int v = 0; v < g.n; ++v) {
        by_root[sets.find(v)].push_back(v);
    }
    std::vector<std::vector<int>> components;
    for (auto& members : by_root) {
        if (!members.empty()) components.push_back(std::move(members));
    }
    return components;
}

WeightedDigraph add_weak_ties(const WeightedDigraph& g,
                              const std::vector<Edge>& ties) {
    validate(g);
    WeightedDigraph out = g;
    for (const Edge& tie : ties) {
        if (tie.weight < 0.0 || !std::isfinite(tie.weight)) {
            throw std::invalid_argument("add_weak_ties: negative or non-finite weight");
        }
        if (tie.source < 0 || tie.source >= g.n || tie.target < 0 ||
            tie.target >= g.n) {
            throw std::invalid_argument("add_weak_ties: endpoint out of range");
        }
        if (tie.source == tie.target) {
            throw std::invalid_argument("add_weak_ties: self-loops are not allowed");
        }
        out.edges.push_back(tie);
    }
    return out;
}

WeightedDigraph load_graph(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open graph file: " + path.string());
    }
    WeightedDigraph g;
    bool have_header = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string first;
        if (!(ss >> first)) continue;  // blank or comment-only line
        if (!have_header) {
            if (first != "n") {
                throw std::invalid_argument("graph file line " + std::to_string(line_no) +
                                            ": expected header 'n <count>'");
            }
            if (!(ss >> g.n)) {
                throw std::invalid_argument("graph file line " + std::to_string(line_no) +
                                            ": missing node count");
            }
            have_header = true;
            continue;
        }
        Edge e;
        std::istringstream es(line);
        if (!(es >> e.source >> e.target >> e.weight)) {
            throw std::invalid_argument("graph file line " + std::to_string(line_no) +
                                        ": expected 'i j w'");
        }
        g.edges.push_back(e);
    }
    if (!have_header) {
        throw std::invalid_argument("graph file: missing 'n <count>' header");
    }
    validate(g);
    return g;
}

}  // namespace oscillnet::graph
