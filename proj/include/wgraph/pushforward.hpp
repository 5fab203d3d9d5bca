#ifndef WGRAPH_PUSHFORWARD_HPP_
#define WGRAPH_PUSHFORWARD_HPP_

#include <string>
#include <utility>
#include <vector>

#include "wgraph/automorphisms.hpp"
#include "wgraph/error.hpp"
#include "wgraph/graph.hpp"
#include "wgraph/measure.hpp"
#include "wgraph/permutation.hpp"
#include "wgraph/transport.hpp"

namespace wgraph {

using MeasurePair = std::pair<Measure, Measure>;

struct PushforwardMismatch {
    std::size_t pair_index = 0;
    Rational cost;        // cost_p(μ, ν)
    Rational pushed_cost; // cost_p(ψ_#μ, ψ_#ν)
};

struct PushforwardReport {
    std::size_t pairs_checked = 0;
    std::vector<PushforwardMismatch> mismatches;

    [[nodiscard]] bool ok() const noexcept { return mismatches.empty(); }
};

/// cost_p(ψ_#μ, ψ_#ν) = cost_p(μ, ν) for every pair, both sides solved exactly.
inline PushforwardReport verify_pushforward_isometry(const Graph& g, const Permutation& psi,
                                                     const std::vector<MeasurePair>& pairs, unsigned p,
                                                     const TransportSolver& solver = solve_ot) {
    if (!is_automorphism(g, psi))
        throw Error(ErrorCode::NotAutomorphism, "permutation does not preserve adjacency");
    const DistanceMatrix d = shortest_path_matrix(g);
    PushforwardReport report;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& [mu, nu] = pairs[i];
        Rational before = solver(mu, nu, d, p).cost_p;
        Rational after = solver(pushforward(psi, mu), pushforward(psi, nu), d, p).cost_p;
        ++report.pairs_checked;
        if (before != after)
            report.mismatches.push_back({i, std::move(before), std::move(after)});
    }
    return report;
}

} // namespace wgraph

#endif
