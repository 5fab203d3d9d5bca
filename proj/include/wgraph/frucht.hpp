#ifndef WGRAPH_FRUCHT_HPP_
#define WGRAPH_FRUCHT_HPP_

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wgraph/automorphisms.hpp"
#include "wgraph/error.hpp"
#include "wgraph/graph.hpp"
#include "wgraph/groups.hpp"
#include "wgraph/pushforward.hpp"
#include "wgraph/sampling.hpp"

namespace wgraph {

namespace detail {

inline std::vector<std::size_t> checked_generators(const FiniteGroup& h,
                                                   const std::optional<std::vector<std::size_t>>& generators) {
    std::vector<std::size_t> gens;
    if (!generators) {
        for (std::size_t x = 1; x < h.order(); ++x)
            gens.push_back(x);
        return gens;
    }
    std::set<std::size_t> seen;
    for (std::size_t s : *generators) {
        if (s >= h.order())
            throw Error(ErrorCode::BadParameter, "generator " + std::to_string(s) + " is not an element");
        if (s == 0)
            throw Error(ErrorCode::BadParameter, "the identity cannot label an arc");
        if (!seen.insert(s).second)
            throw Error(ErrorCode::BadParameter, "generator " + std::to_string(s) + " listed twice");
        gens.push_back(s);
    }
    auto in = generated_subgroup(h, gens);
    for (std::size_t x = 0; x < h.order(); ++x)
        if (!in[x])
            throw Error(ErrorCode::NotGenerating, "element " + std::to_string(x) + " is not generated");
    return gens;
}

} // namespace detail

/// Simple graph with Aut ≅ h. Each arc g → g·s_i of the Cayley digraph
/// becomes g — a — b — g·s_i, with a pendant path of length 2i + 1 at a and
/// of length 2i + 2 at b. Element g is vertex g; order 1 and 2 are special
/// cased.
inline Graph frucht_graph(const FiniteGroup& h, const std::optional<std::vector<std::size_t>>& generators = {}) {
    const auto gens = detail::checked_generators(h, generators);
    if (h.order() == 1)
        return build_graph_indexed({"x0", "x1", "x2", "x3", "x4", "x5"},
                                   {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {2, 5}, {3, 5}});
    if (h.order() == 2)
        return build_graph_indexed({"g0", "g1"}, {{0, 1}});

    std::vector<std::string> names;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t g = 0; g < h.order(); ++g)
        names.push_back("g" + std::to_string(g));
    auto add_vertex = [&](std::string name) {
        names.push_back(std::move(name));
        return names.size() - 1;
    };
    auto add_tail = [&](Vertex anchor, std::size_t length, const std::string& prefix) {
        Vertex prev = anchor;
        for (std::size_t k = 1; k <= length; ++k) {
            Vertex t = add_vertex(prefix + "_" + std::to_string(k));
            edges.emplace_back(prev, t);
            prev = t;
        }
    };

    for (std::size_t g = 0; g < h.order(); ++g) {
        for (std::size_t i = 1; i <= gens.size(); ++i) {
            const std::size_t target = h(g, gens[i - 1]);
            const std::string arc = std::to_string(g) + "_" + std::to_string(i);
            Vertex a = add_vertex("a" + arc);
            Vertex b = add_vertex("b" + arc);
            edges.emplace_back(g, a);
            edges.emplace_back(a, b);
            edges.emplace_back(b, target);
            add_tail(a, 2 * i + 1, "ta" + arc);
            add_tail(b, 2 * i + 2, "tb" + arc);
        }
    }
    return build_graph_indexed(std::move(names), edges);
}

struct PrescribeOptions {
    std::optional<std::vector<std::size_t>> generators;
    std::size_t max_vertices = 4096;
    std::size_t samples = 4; // measure pairs per automorphism
    std::uint64_t seed = 0;
};

struct PrescribeReport {
    Graph graph;
    std::size_t group_order = 0;
    std::size_t aut_order = 0;
    bool isom_equals_aut = false;
    std::optional<Permutation> isomorphism; // Aut index → element of h
    PushforwardReport pushforward;

    [[nodiscard]] bool passed() const {
        return aut_order == group_order && isom_equals_aut && isomorphism.has_value() && pushforward.ok();
    }
};

/// Realizes h as Isom(W_p(X)) for X = frucht_graph(h) and certifies it:
/// Isom(X) = Aut(G), Aut(G) ≅ h explicitly, and every automorphism's
/// push-forward preserves cost_p on seeded sample pairs.
inline PrescribeReport prescribed_isometry_space(const FiniteGroup& h, unsigned p,
                                                 const PrescribeOptions& options = {}) {
    PrescribeReport r{frucht_graph(h, options.generators)};
    r.group_order = h.order();
    const auto autos = enumerate_automorphisms(r.graph, options.max_vertices);
    r.aut_order = autos.size();
    r.isom_equals_aut = autos == enumerate_isometries(shortest_path_matrix(r.graph), options.max_vertices);
    r.isomorphism = groups_isomorphic(group_from_permutations(autos), h);

    Rng rng(options.seed);
    std::vector<MeasurePair> pairs;
    for (std::size_t k = 0; k < options.samples; ++k) {
        Measure mu = random_measure(rng, r.graph.size());
        pairs.emplace_back(mu, random_measure(rng, r.graph.size()));
    }
    for (const auto& psi : autos) {
        auto one = verify_pushforward_isometry(r.graph, psi, pairs, p);
        r.pushforward.pairs_checked += one.pairs_checked;
        for (auto& m : one.mismatches)
            r.pushforward.mismatches.push_back(std::move(m));
    }
    return r;
}

} // namespace wgraph

#endif
