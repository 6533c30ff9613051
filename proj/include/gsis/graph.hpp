#pragma once

#include <Eigen/Dense>
#include <set>
#include <utility>
#include <vector>

namespace gsis {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Finite undirected weighted graph without self-loops. Vertices are
/// 0..n-1; each unordered edge appears exactly once with a positive weight.
class Graph {
public:
    struct Edge {
        int u;
        int v;
        double w;
    };

    Graph(int n_vertices, std::vector<Edge> edge_list);

    int vertex_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    bool has_edge(int u, int v) const;

    Matrix adjacency() const;
    Vector degrees() const;
    Matrix laplacian() const;
    /// Symmetric normalized Laplacian I - D^{-1/2} A D^{-1/2}.
    /// Throws IsolatedVertex if some vertex has zero degree.
    Matrix sym_laplacian() const;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::set<std::pair<int, int>> index_;
};

Graph complete_graph(int n);

/// Circulant graph on Z_N with connection set {±q : q in offsets}. Offsets
/// must be distinct integers in [1, n/2]; an offset of exactly n/2 yields a
/// single edge per vertex pair rather than a doubled one.
Graph circulant_graph(int n, const std::vector<int>& offsets);

} // namespace gsis
