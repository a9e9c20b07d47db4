#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <vector>

namespace oscillnet::graph {

struct Edge {
    int source = 0;
    int target = 0;
    double weight = 0.0;  // coupling strength, >= 0
};

// Directed weighted graph on nodes 0..n-1. Immutable by convention after
// construction: operations return new graphs instead of mutating.
struct WeightedDigraph {
    int n = 0;
    std::vector<Edge> edges;
};

// Throws std::invalid_argument unless all indices lie in [0, n), all
// weights are >= 0 and finite, and no self-loops are present.
void validate(const WeightedDigraph& g);

// L(i,i) = sum_j w(i,j), L(i,j) = -w(i,j) for i != j. Duplicate (i,j)
// edges sum their weights. The diagonal is accumulated from the same
// per-row weights as the off-diagonals, in ascending column order, so a
// row summed off-diagonals-first (see laplacian_row_sum) is exactly 0.
Eigen::MatrixXd build_laplacian(const WeightedDigraph& g);

// Row sum in the construction order: off-diagonal entries in ascending
// column order, diagonal last. Exactly 0 for any build_laplacian output.
double laplacian_row_sum(const Eigen::MatrixXd& L, int row);

// Components of the undirected support graph: i and j are linked when
// w(i,j) > 0 or w(j,i) > 0. Zero-weight edges do not link. The partition
// covers all nodes; components and their members are sorted ascending.
std::vector<std::vector<int>> connected_components(const WeightedDigraph& g);

// Returns a copy of g with the tie edges appended. Rejects negative
// weights, self-loops, and out-of-range endpoints. Never increases the
// component count.
WeightedDigraph add_weak_ties(const WeightedDigraph& g,
                              const std::vector<Edge>& ties);

// Plain-text edge list: a header line "n <count>", then one "i j w" line
// per edge. '#' starts a comment; blank lines are skipped.
WeightedDigraph load_graph(const std::filesystem::path& path);

}  // namespace oscillnet::graph
