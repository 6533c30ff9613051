#include "gsis/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gsis/errors.hpp"

namespace gsis {

Graph::Graph(int n_vertices, std::vector<Edge> edge_list)
    : n_(n_vertices), edges_(std::move(edge_list)) {
    if (n_ < 2) throw InvalidSpec("a graph needs at least 2 vertices, got " + std::to_string(n_));
    for (auto& e : edges_) {
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
            throw InvalidSpec("edge endpoint out of range: (" + std::to_string(e.u) + ", " +
                              std::to_string(e.v) + ") with n = " + std::to_string(n_));
        if (e.u == e.v)
            throw InvalidSpec("self-loop at vertex " + std::to_string(e.u) + " is not allowed");
        if (!(e.w > 0) || !std::isfinite(e.w))
            throw InvalidSpec("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                              ") must have a positive finite weight");
        auto key = std::minmax(e.u, e.v);
        if (!index_.insert(key).second)
            throw InvalidSpec("duplicate edge (" + std::to_string(key.first) + ", " +
                              std::to_string(key.second) + ")");
    }
}

bool Graph::has_edge(int u, int v) const {
    if (u == v) return false;
    return index_.count(std::minmax(u, v)) > 0;
}

Matrix Graph::adjacency() const {
    Matrix a = Matrix::Zero(n_, n_);
    for (const auto& e : edges_) {
        a(e.u, e.v) = e.w;
        a(e.v, e.u) = e.w;
    }
    return a;
}

Vector Graph::degrees() const {
    Vector d = Vector::Zero(n_);
    for (const auto& e : edges_) {
        d(e.u) += e.w;
        d(e.v) += e.w;
    }
    return d;
}

Matrix Graph::laplacian() const {
    Matrix l = -adjacency();
    Vector d = degrees();
    for (int i = 0; i < n_; ++i) l(i, i) = d(i);
    return l;
}

Matrix Graph::sym_laplacian() const {
    Vector d = degrees();
    for (int i = 0; i < n_; ++i)
        if (d(i) <= 0)
            throw IsolatedVertex("vertex " + std::to_string(i) +
                                 " has zero degree; the normalized laplacian is undefined");
    Matrix l = Matrix::Identity(n_, n_);
    for (const auto& e : edges_) {
        const double v = -e.w / std::sqrt(d(e.u) * d(e.v));
        l(e.u, e.v) = v;
        l(e.v, e.u) = v;
    }
    return l;
}

Graph complete_graph(int n) {
    std::vector<Graph::Edge> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
    return Graph(n, std::move(edges));
}

Graph circulant_graph(int n, const std::vector<int>& offsets) {
    if (n < 2) throw InvalidSpec("circulant graph needs n >= 2");
    std::set<int> seen;
    std::vector<Graph::Edge> edges;
    std::set<std::pair<int, int>> pairs;
    for (int q : offsets) {
        if (q < 1 || 2 * q > n)
            throw InvalidSpec("circulant offset " + std::to_string(q) +
                              " out of range [1, n/2] for n = " + std::to_string(n));
        if (!seen.insert(q).second)
            throw InvalidSpec("duplicate circulant offset " + std::to_string(q));
        for (int i = 0; i < n; ++i) {
            int j = (i + q) % n;
            auto key = std::minmax(i, j);
            if (pairs.insert(key).second) edges.push_back({key.first, key.second, 1.0});
        }
    }
    return Graph(n, std::move(edges));
}

} // namespace gsis
