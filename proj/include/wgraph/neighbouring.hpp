#ifndef WGRAPH_NEIGHBOURING_HPP_
#define WGRAPH_NEIGHBOURING_HPP_

#include <optional>
#include <string>
#include <vector>

#include "wgraph/error.hpp"
#include "wgraph/graph.hpp"
#include "wgraph/measure.hpp"
#include "wgraph/transport.hpp"

namespace wgraph {

// Witness for μ ≡ ν [α]: μ = η + αδ_u, ν = η + αδ_v with ϱ(u, v) = 1.
struct NeighbouringCertificate {
    Vertex u = 0;
    Vertex v = 0;
    Rational alpha;
    SignedMass eta; // nonnegative entries only

    [[nodiscard]] Measure source() const {
        SignedMass m = eta;
        m.add(u, alpha);
        return make_measure(m.entries());
    }
    [[nodiscard]] Measure target() const {
        SignedMass m = eta;
        m.add(v, alpha);
        return make_measure(m.entries());
    }
};

/// The certificate exists iff μ − ν is +α at one vertex u, −α at one vertex v,
/// zero elsewhere, with ϱ(u, v) = 1 and 0 < α <= 1. Never holds for μ = ν.
inline std::optional<NeighbouringCertificate> check_neighbouring(const Measure& mu, const Measure& nu,
                                                                 const DistanceMatrix& d) {
    detail::check_on_graph(mu, d);
    detail::check_on_graph(nu, d);
    SignedMass diff = difference(mu, nu);
    if (diff.support_size() != 2)
        return std::nullopt;
    auto first = diff.entries().begin();
    auto second = std::next(first);
    NeighbouringCertificate cert;
    if (first->second > 0) {
        cert.u = first->first;
        cert.v = second->first;
    } else {
        cert.u = second->first;
        cert.v = first->first;
    }
    cert.alpha = diff[cert.u];
    if (diff[cert.v] != -cert.alpha || cert.alpha <= 0 || cert.alpha > 1 || d(cert.u, cert.v) != 1)
        return std::nullopt;
    WeightMap eta;
    for (const auto& [x, w] : mu.entries())
        eta[x] = std::min(w, nu[x]);
    cert.eta = SignedMass(eta);
    return cert;
}

// The two radius budgets of B_s(μ, ν), stated on p-th powers:
// d_p^p(μ, ξ) <= s·d_p^p(μ, ν) and d_p^p(ξ, ν) <= (1 − s)·d_p^p(μ, ν).
struct BsQuery {
    Measure mu;
    Measure nu;
    Rational s;
    Rational cost;
    Rational budget_from_mu;
    Rational budget_to_nu;
};

inline BsQuery make_bs_query(const Measure& mu, const Measure& nu, const Rational& s, const DistanceMatrix& d,
                             unsigned p) {
    if (s <= 0 || s >= 1)
        throw Error(ErrorCode::BadParameter, "s must lie in (0,1), got " + to_string(s));
    Rational cost = solve_ot(mu, nu, d, p).cost_p;
    return {mu, nu, s, cost, s * cost, (1 - s) * cost};
}

struct BsMembership {
    bool member = false;
    Rational cost_from_mu; // d_p^p(μ, ξ)
    Rational cost_to_nu;   // d_p^p(ξ, ν)
};

inline BsMembership check_bs_membership(const Measure& xi, const BsQuery& q, const DistanceMatrix& d, unsigned p) {
    BsMembership out;
    out.cost_from_mu = solve_ot(q.mu, xi, d, p).cost_p;
    out.cost_to_nu = solve_ot(xi, q.nu, d, p).cost_p;
    out.member = out.cost_from_mu <= q.budget_from_mu && out.cost_to_nu <= q.budget_to_nu;
    return out;
}

inline bool bs_membership(const Measure& xi, const Measure& mu, const Measure& nu, const Rational& s,
                          const DistanceMatrix& d, unsigned p) {
    return check_bs_membership(xi, make_bs_query(mu, nu, s, d, p), d, p).member;
}

enum class WitnessKind {
    PathPerturbation, // transported pair at distance k > 1
    PairPerturbation, // two transported unit-distance pairs
    PairMassShift,    // fallback: shift c̃ from one transported pair to the other
};

inline std::string to_string(WitnessKind k) {
    switch (k) {
    case WitnessKind::PathPerturbation: return "path-perturbation";
    case WitnessKind::PairPerturbation: return "pair-perturbation";
    case WitnessKind::PairMassShift: return "pair-mass-shift";
    }
    return "unknown";
}

// A verified member of B_{1/2}(μ, ν) other than the midpoint.
struct BsWitness {
    Measure xi;
    WitnessKind kind;
    BsMembership membership;
    BsQuery query;
};

/// Builds a second element of B_{1/2}(μ, ν) from an optimal plan, for pairs
/// with 0 < d_p^p(μ, ν) <= 1 that are not neighbouring. Returns nullopt for
/// neighbouring pairs, whose B_{1/2} is the midpoint alone.
///
/// (a) If a transported pair (x', y') has k = ϱ(x', y') > 1, take the BFS
///     shortest path x' = x_0, ..., x_k = y' and c = π(x', y')/4:
///     ξ = ξ_{1/2} − cδ_{x_0} + cδ_{x_1} + cδ_{x_{k−1}} − cδ_{x_k}.
/// (b) Otherwise take two transported pairs (x_1, y_1), (x_2, y_2) and
///     c̃ = min(π(x_1, y_1), π(x_2, y_2))/4:
///     ξ = ξ_{1/2} + c̃δ_{x_1} + c̃δ_{y_1} − c̃δ_{x_2} − c̃δ_{y_2},
///     trying each ordered choice of pairs. If none verifies, fall back to
///     ξ = ξ_{1/2} − c̃δ_{x_1} + c̃δ_{y_1} + c̃δ_{x_2} − c̃δ_{y_2}, which lies in
///     B_{1/2} because its couplings to μ and to ν keep the cost at α/2.
///
/// Every candidate is checked by exact solves before it is returned.
inline std::optional<BsWitness> bs_witness(const Graph& g, const Measure& mu, const Measure& nu,
                                           const DistanceMatrix& d, unsigned p) {
    auto optimal = solve_ot(mu, nu, d, p);
    const Rational& alpha = optimal.cost_p;
    if (alpha <= 0 || alpha > 1)
        throw Error(ErrorCode::PreconditionViolated, "witness needs 0 < d_p^p <= 1, got " + to_string(alpha));
    if (check_neighbouring(mu, nu, d))
        return std::nullopt;

    const Rational half(1, 2);
    const Measure midpoint = interpolate(mu, nu, half);
    const BsQuery query{mu, nu, half, alpha, half * alpha, half * alpha};

    auto attempt = [&](const SignedMass& delta, WitnessKind kind) -> std::optional<BsWitness> {
        if (delta.empty())
            return std::nullopt;
        Measure xi = perturb(midpoint, delta);
        auto membership = check_bs_membership(xi, query, d, p);
        if (!membership.member)
            return std::nullopt;
        return BsWitness{std::move(xi), kind, std::move(membership), query};
    };

    const auto transported = optimal.plan.off_diagonal();
    std::string rejected;
    for (const auto& [cell, mass] : transported) {
        auto [from, to] = cell;
        if (d(from, to) <= 1)
            continue;
        auto path = shortest_path(g, from, to);
        const Rational c = mass / 4;
        SignedMass delta;
        delta.add(path.front(), -c);
        delta.add(path[1], c);
        delta.add(path[path.size() - 2], c);
        delta.add(path.back(), -c);
        if (auto w = attempt(delta, WitnessKind::PathPerturbation))
            return w;
        rejected += " (" + g.name(from) + "," + g.name(to) + ")";
    }
    if (!rejected.empty())
        throw Error(ErrorCode::WitnessRejected, "path perturbations along" + rejected + " are not in B_1/2");

    if (transported.size() < 2)
        throw Error(ErrorCode::WitnessRejected, "optimal plan has a single unit-distance transfer but the pair is "
                                                "not neighbouring");

    for (std::size_t a = 0; a < transported.size(); ++a) {
        for (std::size_t b = 0; b < transported.size(); ++b) {
            if (a == b)
                continue;
            const auto& [first, m1] = transported[a];
            const auto& [second, m2] = transported[b];
            const Rational c = std::min(m1, m2) / 4;
            SignedMass delta;
            delta.add(first.first, c);
            delta.add(first.second, c);
            delta.add(second.first, -c);
            delta.add(second.second, -c);
            if (auto w = attempt(delta, WitnessKind::PairPerturbation))
                return w;
        }
    }

    const auto& [first, m1] = transported[0];
    const auto& [second, m2] = transported[1];
    const Rational c = std::min(m1, m2) / 4;
    SignedMass delta;
    delta.add(first.first, -c);
    delta.add(first.second, c);
    delta.add(second.first, c);
    delta.add(second.second, -c);
    if (auto w = attempt(delta, WitnessKind::PairMassShift))
        return w;
    throw Error(ErrorCode::WitnessRejected, "no pair perturbation of the midpoint verified as a member of B_1/2");
}

enum class PairVerdict {
    Identical,   // d_p^p = 0
    OutOfRange,  // d_p^p > 1
    Neighbouring,
    WitnessFound,
    Inconsistent,
};

inline std::string to_string(PairVerdict v) {
    switch (v) {
    case PairVerdict::Identical: return "identical";
    case PairVerdict::OutOfRange: return "out of alpha range";
    case PairVerdict::Neighbouring: return "neighbouring (certificate, cost equals alpha)";
    case PairVerdict::WitnessFound: return "not neighbouring (witness refutes singleton)";
    case PairVerdict::Inconsistent: return "inconsistent";
    }
    return "unknown";
}

struct PairReport {
    Rational cost;
    std::optional<NeighbouringCertificate> certificate;
    std::optional<BsWitness> witness;
    PairVerdict verdict = PairVerdict::Inconsistent;

    [[nodiscard]] bool consistent() const { return verdict != PairVerdict::Inconsistent; }
};

/// Exactly one of {certificate, witness} must exist when 0 < d_p^p <= 1, and
/// a certificate forces d_p^p = α.
inline PairReport classify_pair(const Graph& g, const Measure& mu, const Measure& nu, const DistanceMatrix& d,
                                unsigned p) {
    PairReport r;
    r.cost = solve_ot(mu, nu, d, p).cost_p;
    if (r.cost == 0) {
        r.verdict = PairVerdict::Identical;
        return r;
    }
    if (r.cost > 1) {
        r.verdict = PairVerdict::OutOfRange;
        return r;
    }
    r.certificate = check_neighbouring(mu, nu, d);
    r.witness = bs_witness(g, mu, nu, d, p);
    if (r.certificate && !r.witness && r.certificate->alpha == r.cost)
        r.verdict = PairVerdict::Neighbouring;
    else if (!r.certificate && r.witness)
        r.verdict = PairVerdict::WitnessFound;
    else
        r.verdict = PairVerdict::Inconsistent;
    return r;
}

} // namespace wgraph

#endif
