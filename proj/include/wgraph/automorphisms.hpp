#ifndef WGRAPH_AUTOMORPHISMS_HPP_
#define WGRAPH_AUTOMORPHISMS_HPP_

#include <algorithm>
#include <map>
#include <vector>

#include "wgraph/error.hpp"
#include "wgraph/graph.hpp"
#include "wgraph/groups.hpp"
#include "wgraph/permutation.hpp"

namespace wgraph {

inline constexpr std::size_t kDefaultAutomorphismCap = 512;

inline bool is_automorphism(const Graph& g, const Permutation& psi) {
    if (psi.size() != g.size())
        return false;
    for (auto [a, b] : g.edges())
        if (!g.adjacent(psi(a), psi(b)))
            return false;
    // A bijection mapping edges into edges of a finite graph maps E onto E.
    return true;
}

inline bool is_isometry(const DistanceMatrix& d, const Permutation& psi) {
    if (psi.size() != d.size())
        return false;
    for (Vertex a = 0; a < d.size(); ++a)
        for (Vertex b = 0; b < d.size(); ++b)
            if (d(a, b) != d(psi(a), psi(b)))
                return false;
    return true;
}

namespace detail {

inline void check_cap(const Graph& g, std::size_t cap) {
    if (g.size() > cap)
        throw Error(ErrorCode::TooLarge, "graph has " + std::to_string(g.size()) + " vertices, cap is " +
                                             std::to_string(cap));
}

// Per-vertex invariant: degree followed by the number of vertices at each
// distance.
inline std::vector<std::vector<std::size_t>> distance_profiles(const Graph& g, const DistanceMatrix& d) {
    std::vector<std::vector<std::size_t>> profile(g.size());
    const auto diam = static_cast<std::size_t>(d.diameter());
    for (Vertex v = 0; v < g.size(); ++v) {
        profile[v].assign(diam + 2, 0);
        profile[v][0] = g.degree(v);
        for (Vertex w = 0; w < g.size(); ++w)
            ++profile[v][1 + static_cast<std::size_t>(d(v, w))];
    }
    return profile;
}

} // namespace detail

/// Every adjacency-preserving bijection, sorted lexicographically by image
/// array (so the identity comes first). Vertices are assigned in BFS order;
/// a vertex's image must be a neighbour of its BFS parent's image, share its
/// degree and distance profile, and agree on adjacency with every vertex
/// already placed.
inline std::vector<Permutation> enumerate_automorphisms(const Graph& g,
                                                        std::size_t max_vertices = kDefaultAutomorphismCap) {
    detail::check_cap(g, max_vertices);
    const std::size_t n = g.size();
    const auto profile = detail::distance_profiles(g, shortest_path_matrix(g));
    const auto order = bfs_order(g, 0);
    std::vector<Vertex> bfs_parent(n, n);
    {
        std::vector<bool> placed(n, false);
        for (Vertex v : order) {
            for (Vertex w : g.neighbours(v))
                if (placed[w]) {
                    bfs_parent[v] = w;
                    break;
                }
            placed[v] = true;
        }
    }

    std::vector<Permutation> found;
    std::vector<Vertex> image(n, n);
    std::vector<bool> used(n, false);

    auto fits = [&](std::size_t depth, Vertex candidate) {
        const Vertex v = order[depth];
        if (used[candidate] || profile[v] != profile[candidate])
            return false;
        for (std::size_t k = 0; k < depth; ++k)
            if (g.adjacent(v, order[k]) != g.adjacent(candidate, image[order[k]]))
                return false;
        return true;
    };

    auto search = [&](auto&& self, std::size_t depth) -> void {
        if (depth == n) {
            found.emplace_back(image);
            return;
        }
        const Vertex v = order[depth];
        std::vector<Vertex> candidates;
        if (depth == 0) {
            for (Vertex c = 0; c < n; ++c)
                candidates.push_back(c);
        } else {
            candidates = g.neighbours(image[bfs_parent[v]]);
        }
        for (Vertex c : candidates) {
            if (!fits(depth, c))
                continue;
            image[v] = c;
            used[c] = true;
            self(self, depth + 1);
            used[c] = false;
            image[v] = n;
        }
    };
    search(search, 0);
    std::sort(found.begin(), found.end());
    return found;
}

/// Every permutation preserving the full distance matrix. Independent of the
/// adjacency search: candidates are filtered only by distances to vertices
/// already placed.
inline std::vector<Permutation> enumerate_isometries(const DistanceMatrix& d,
                                                     std::size_t max_vertices = kDefaultAutomorphismCap) {
    const std::size_t n = d.size();
    if (n > max_vertices)
        throw Error(ErrorCode::TooLarge, "metric space has " + std::to_string(n) + " points, cap is " +
                                             std::to_string(max_vertices));
    // Points with different sorted distance rows can never be swapped.
    std::vector<std::size_t> row_class(n);
    {
        std::map<std::vector<int>, std::size_t> classes;
        for (Vertex v = 0; v < n; ++v) {
            auto row = d.row(v);
            std::sort(row.begin(), row.end());
            row_class[v] = classes.emplace(std::move(row), classes.size()).first->second;
        }
    }
    // Place points nearest-first from point 0 so early distances prune hard.
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v)
        order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return d(0, a) < d(0, b); });

    std::vector<Permutation> found;
    std::vector<Vertex> image(n, n);
    std::vector<bool> used(n, false);
    auto search = [&](auto&& self, std::size_t depth) -> void {
        if (depth == n) {
            found.emplace_back(image);
            return;
        }
        const Vertex v = order[depth];
        for (Vertex c = 0; c < n; ++c) {
            if (used[c] || row_class[v] != row_class[c])
                continue;
            bool ok = true;
            for (std::size_t k = 0; k < depth && ok; ++k)
                ok = d(v, order[k]) == d(c, image[order[k]]);
            if (!ok)
                continue;
            image[v] = c;
            used[c] = true;
            self(self, depth + 1);
            used[c] = false;
            image[v] = n;
        }
    };
    search(search, 0);
    std::sort(found.begin(), found.end());
    return found;
}

/// Isom(X, ϱ) = Aut(G) as sets, each side enumerated on its own.
inline bool isometries_equal_automorphisms(const Graph& g, std::size_t max_vertices = kDefaultAutomorphismCap) {
    return enumerate_automorphisms(g, max_vertices) == enumerate_isometries(shortest_path_matrix(g), max_vertices);
}

/// Cayley table of Aut(G) under composition, identity at index 0.
inline FiniteGroup automorphism_group(const Graph& g, std::size_t max_vertices = kDefaultAutomorphismCap) {
    return group_from_permutations(enumerate_automorphisms(g, max_vertices));
}

} // namespace wgraph

#endif
