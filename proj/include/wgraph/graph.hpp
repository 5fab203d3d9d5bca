#ifndef WGRAPH_GRAPH_HPP_
#define WGRAPH_GRAPH_HPP_

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "wgraph/error.hpp"
#include "wgraph/rational.hpp"

namespace wgraph {

using Vertex = std::size_t;

// Finite simple connected graph. Vertex order is fixed at construction and
// every matrix, measure and permutation in the library is indexed by it.
class Graph {
public:
    [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
    [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
    [[nodiscard]] const std::string& name(Vertex v) const { return names_.at(v); }

    [[nodiscard]] std::optional<Vertex> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    [[nodiscard]] Vertex index_of(const std::string& name) const {
        auto v = find(name);
        if (!v)
            throw Error(ErrorCode::UnknownVertex, "vertex '" + name + "' is not in the graph");
        return *v;
    }

    /// Sorted neighbour list.
    [[nodiscard]] const std::vector<Vertex>& neighbours(Vertex v) const { return adjacency_.at(v); }
    [[nodiscard]] std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }

    [[nodiscard]] bool adjacent(Vertex a, Vertex b) const {
        const auto& nb = adjacency_.at(a);
        return std::binary_search(nb.begin(), nb.end(), b);
    }

    /// Edges as (lower index, higher index), lexicographically sorted.
    [[nodiscard]] std::vector<std::pair<Vertex, Vertex>> edges() const {
        std::vector<std::pair<Vertex, Vertex>> out;
        for (Vertex a = 0; a < size(); ++a)
            for (Vertex b : adjacency_[a])
                if (a < b)
                    out.emplace_back(a, b);
        return out;
    }

    [[nodiscard]] std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& nb : adjacency_)
            twice += nb.size();
        return twice / 2;
    }

    friend Graph build_graph(std::vector<std::string> vertices,
                             const std::vector<std::pair<std::string, std::string>>& edges);
    friend Graph build_graph_indexed(std::vector<std::string> vertices,
                                     const std::vector<std::pair<Vertex, Vertex>>& edges);

private:
    Graph() = default;

    std::vector<std::string> names_;
    std::map<std::string, Vertex> index_;
    std::vector<std::vector<Vertex>> adjacency_;
};

namespace detail {

inline std::vector<int> bfs_distances(const Graph& g, Vertex source) {
    std::vector<int> dist(g.size(), -1);
    std::queue<Vertex> frontier;
    dist[source] = 0;
    frontier.push(source);
    while (!frontier.empty()) {
        Vertex x = frontier.front();
        frontier.pop();
        for (Vertex y : g.neighbours(x)) {
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                frontier.push(y);
            }
        }
    }
    return dist;
}

} // namespace detail

/// Builds a graph from vertex indices. Duplicate edges collapse silently.
inline Graph build_graph_indexed(std::vector<std::string> vertices,
                                 const std::vector<std::pair<Vertex, Vertex>>& edges) {
    Graph g;
    if (vertices.empty())
        throw Error(ErrorCode::Disconnected, "graph has no vertices");
    for (Vertex i = 0; i < vertices.size(); ++i) {
        if (!g.index_.emplace(vertices[i], i).second)
            throw Error(ErrorCode::DuplicateVertex, "vertex '" + vertices[i] + "' listed twice");
    }
    g.adjacency_.assign(vertices.size(), {});
    for (auto [a, b] : edges) {
        if (a >= vertices.size() || b >= vertices.size())
            throw Error(ErrorCode::UnknownVertex, "edge endpoint out of range");
        if (a == b)
            throw Error(ErrorCode::SelfLoop, "edge joins '" + vertices[a] + "' to itself");
        g.adjacency_[a].push_back(b);
        g.adjacency_[b].push_back(a);
    }
    for (auto& nb : g.adjacency_) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
    }
    g.names_ = std::move(vertices);

    auto dist = detail::bfs_distances(g, 0);
    for (Vertex v = 0; v < g.size(); ++v)
        if (dist[v] < 0)
            throw Error(ErrorCode::Disconnected, "vertex '" + g.names_[v] + "' is unreachable from '" + g.names_[0] + "'");
    return g;
}

inline Graph build_graph(std::vector<std::string> vertices,
                         const std::vector<std::pair<std::string, std::string>>& edges) {
    std::map<std::string, Vertex> index;
    for (Vertex i = 0; i < vertices.size(); ++i)
        index.emplace(vertices[i], i);
    std::vector<std::pair<Vertex, Vertex>> indexed;
    indexed.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        auto ia = index.find(a);
        auto ib = index.find(b);
        if (ia == index.end())
            throw Error(ErrorCode::UnknownVertex, "edge references unlisted vertex '" + a + "'");
        if (ib == index.end())
            throw Error(ErrorCode::UnknownVertex, "edge references unlisted vertex '" + b + "'");
        indexed.emplace_back(ia->second, ib->second);
    }
    return build_graph_indexed(std::move(vertices), indexed);
}

/// Symmetric matrix of integer shortest-path distances.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    DistanceMatrix(std::size_t n, std::vector<int> entries) : n_(n), d_(std::move(entries)) {
        if (d_.size() != n_ * n_)
            throw Error(ErrorCode::MalformedMatrix, "distance matrix is not square");
    }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] int operator()(Vertex a, Vertex b) const { return d_[a * n_ + b]; }
    [[nodiscard]] int diameter() const {
        return d_.empty() ? 0 : *std::max_element(d_.begin(), d_.end());
    }
    [[nodiscard]] std::vector<int> row(Vertex a) const {
        return {d_.begin() + static_cast<std::ptrdiff_t>(a * n_), d_.begin() + static_cast<std::ptrdiff_t>((a + 1) * n_)};
    }

    friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<int> d_;
};

/// All-pairs shortest paths by one breadth-first search per vertex.
inline DistanceMatrix shortest_path_matrix(const Graph& g) {
    const std::size_t n = g.size();
    std::vector<int> entries(n * n);
    for (Vertex s = 0; s < n; ++s) {
        auto dist = detail::bfs_distances(g, s);
        std::copy(dist.begin(), dist.end(), entries.begin() + static_cast<std::ptrdiff_t>(s * n));
    }
    return DistanceMatrix(n, std::move(entries));
}

/// Decides whether a symmetric zero-diagonal matrix is the shortest-path metric
/// of some connected graph: integral entries, and every pair at distance >= 2
/// has a strictly intermediate point saturating the triangle inequality.
inline bool verify_graph_metric(const std::vector<std::vector<Rational>>& d) {
    const std::size_t n = d.size();
    for (const auto& row : d)
        if (row.size() != n)
            throw Error(ErrorCode::MalformedMatrix, "matrix is not square");
    for (std::size_t a = 0; a < n; ++a) {
        if (d[a][a] != 0)
            throw Error(ErrorCode::MalformedMatrix, "nonzero diagonal entry");
        for (std::size_t b = 0; b < n; ++b)
            if (d[a][b] != d[b][a])
                throw Error(ErrorCode::MalformedMatrix, "matrix is not symmetric");
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (denominator(d[a][b]) != 1)
                return false;
            if (a != b && d[a][b] <= 0)
                return false;
        }
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t x = 0; x < n; ++x)
                if (d[a][b] > d[a][x] + d[x][b])
                    return false;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (d[a][b] < 2)
                continue;
            bool saturated = false;
            for (std::size_t x = 0; x < n && !saturated; ++x)
                saturated = d[a][x] > 0 && d[x][b] > 0 && d[a][b] == d[a][x] + d[x][b];
            if (!saturated)
                return false;
        }
    }
    return true;
}

/// Breadth-first enumeration from `start`: every vertex after the first is
/// adjacent to some earlier one.
inline std::vector<Vertex> bfs_order(const Graph& g, Vertex start = 0) {
    std::vector<Vertex> order;
    std::vector<bool> seen(g.size(), false);
    std::queue<Vertex> frontier;
    seen.at(start) = true;
    frontier.push(start);
    while (!frontier.empty()) {
        Vertex x = frontier.front();
        frontier.pop();
        order.push_back(x);
        for (Vertex y : g.neighbours(x)) {
            if (!seen[y]) {
                seen[y] = true;
                frontier.push(y);
            }
        }
    }
    return order;
}

/// A shortest path from `from` to `to` read off the BFS parent tree rooted at
/// `from`; neighbours are scanned in increasing index order.
inline std::vector<Vertex> shortest_path(const Graph& g, Vertex from, Vertex to) {
    constexpr Vertex none = std::numeric_limits<Vertex>::max();
    std::vector<Vertex> parent(g.size(), none);
    std::queue<Vertex> frontier;
    parent.at(from) = from;
    frontier.push(from);
    while (!frontier.empty() && parent.at(to) == none) {
        Vertex x = frontier.front();
        frontier.pop();
        for (Vertex y : g.neighbours(x)) {
            if (parent[y] == none) {
                parent[y] = x;
                frontier.push(y);
            }
        }
    }
    std::vector<Vertex> path{to};
    while (path.back() != from)
        path.push_back(parent[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace wgraph

#endif
