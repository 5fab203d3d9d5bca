#ifndef WGRAPH_SAMPLING_HPP_
#define WGRAPH_SAMPLING_HPP_

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "wgraph/graph.hpp"
#include "wgraph/measure.hpp"

namespace wgraph {

// std::mt19937_64 is fully specified by the standard; the distributions are
// not, so bounded draws are done by hand to keep reports byte-stable across
// standard libraries.
using Rng = std::mt19937_64;

inline std::size_t uniform_below(Rng& rng, std::size_t n) {
    return static_cast<std::size_t>(rng() % n);
}

/// k distinct values from [0, n), increasing.
inline std::vector<std::size_t> sample_subset(Rng& rng, std::size_t n, std::size_t k) {
    std::vector<std::size_t> pool(n);
    std::iota(pool.begin(), pool.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i)
        std::swap(pool[i], pool[i + uniform_below(rng, n - i)]);
    pool.resize(k);
    std::sort(pool.begin(), pool.end());
    return pool;
}

/// Random measure: support size uniform in [1, min(max_support, n)], support
/// a uniform subset of that size, weights a random composition of a
/// denominator D <= max_denominator into positive parts.
inline Measure random_measure(Rng& rng, std::size_t n, std::size_t max_support = 5,
                              std::size_t max_denominator = 64) {
    const std::size_t k = 1 + uniform_below(rng, std::min(max_support, n));
    auto support = sample_subset(rng, n, k);
    const std::size_t denom = k + uniform_below(rng, max_denominator - k + 1);
    // k − 1 distinct cut points in [1, denom − 1].
    auto cuts = sample_subset(rng, denom - 1, k - 1);
    WeightMap w;
    std::size_t prev = 0;
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t next = i + 1 < k ? cuts[i] + 1 : denom;
        w[support[i]] = Rational(static_cast<long>(next - prev), static_cast<long>(denom));
        prev = next;
    }
    return make_measure(w);
}

/// Random α-neighbouring pair: mass α ∈ (0, μ(u)] leaves a support vertex u
/// for an adjacent v.
inline std::pair<Measure, Measure> random_neighbouring_pair(Rng& rng, const Graph& g) {
    Measure mu = random_measure(rng, g.size());
    auto support = mu.support();
    Vertex u = support[uniform_below(rng, support.size())];
    const auto& nb = g.neighbours(u);
    Vertex v = nb[uniform_below(rng, nb.size())];
    const long parts = 1 + static_cast<long>(uniform_below(rng, 8));
    Rational alpha = mu[u] * Rational(parts, 8);
    SignedMass move;
    move.add(u, -alpha);
    move.add(v, alpha);
    return {mu, perturb(mu, move)};
}

/// Pair at small transport cost: up to two parcels move from support
/// vertices to vertices at distance 1 or 2, with total moved mass <= 1/4.
inline std::pair<Measure, Measure> random_local_pair(Rng& rng, const DistanceMatrix& d) {
    const std::size_t n = d.size();
    Measure mu = random_measure(rng, n);
    SignedMass move;
    Measure current = mu;
    const std::size_t parcels = 1 + uniform_below(rng, 2);
    for (std::size_t k = 0; k < parcels; ++k) {
        auto support = current.support();
        Vertex x = support[uniform_below(rng, support.size())];
        std::vector<Vertex> targets;
        for (Vertex y = 0; y < n; ++y)
            if (d(x, y) == 1 || d(x, y) == 2)
                targets.push_back(y);
        if (targets.empty())
            continue;
        Vertex y = targets[uniform_below(rng, targets.size())];
        Rational amount = std::min(current[x], Rational(1, 8)) * Rational(1 + static_cast<long>(uniform_below(rng, 4)), 4);
        SignedMass step;
        step.add(x, -amount);
        step.add(y, amount);
        current = perturb(current, step);
    }
    return {mu, current};
}

} // namespace wgraph

#endif
