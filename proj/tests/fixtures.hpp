#ifndef WGRAPH_TESTS_FIXTURES_HPP_
#define WGRAPH_TESTS_FIXTURES_HPP_

#include <string>
#include <utility>
#include <vector>

#include "wgraph/graph.hpp"
#include "wgraph/measure.hpp"
#include "wgraph/rational.hpp"

namespace wgraph::testing {

inline Rational Q(const char* text) { return parse_rational(text); }

inline std::vector<std::string> names(std::size_t n) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < n; ++i)
        v.push_back("v" + std::to_string(i));
    return v;
}

inline Graph path_graph(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex i = 0; i + 1 < n; ++i)
        e.emplace_back(i, i + 1);
    return build_graph_indexed(names(n), e);
}

inline Graph cycle_graph(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex i = 0; i < n; ++i)
        e.emplace_back(i, (i + 1) % n);
    return build_graph_indexed(names(n), e);
}

inline Graph complete_graph(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            e.emplace_back(i, j);
    return build_graph_indexed(names(n), e);
}

inline Graph grid_graph(std::size_t rows, std::size_t cols) {
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex r = 0; r < rows; ++r)
        for (Vertex c = 0; c < cols; ++c) {
            Vertex v = r * cols + c;
            if (c + 1 < cols)
                e.emplace_back(v, v + 1);
            if (r + 1 < rows)
                e.emplace_back(v, v + cols);
        }
    return build_graph_indexed(names(rows * cols), e);
}

// {v: "a/b", ...} shorthand.
inline Measure M(std::initializer_list<std::pair<Vertex, const char*>> weights) {
    WeightMap w;
    for (const auto& [v, text] : weights)
        w[v] = Q(text);
    return make_measure(w);
}

} // namespace wgraph::testing

#endif
