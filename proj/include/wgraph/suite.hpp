#ifndef WGRAPH_SUITE_HPP_
#define WGRAPH_SUITE_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wgraph/automorphisms.hpp"
#include "wgraph/graph.hpp"
#include "wgraph/measure.hpp"
#include "wgraph/neighbouring.hpp"
#include "wgraph/pushforward.hpp"
#include "wgraph/rigidity.hpp"
#include "wgraph/sampling.hpp"
#include "wgraph/transport.hpp"

namespace wgraph {

struct PropertyResult {
    std::string name;
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::vector<std::string> counterexamples; // first few failures only
    std::string note;

    [[nodiscard]] bool passed() const noexcept { return failed == 0; }
};

struct SuiteReport {
    std::size_t vertices = 0;
    unsigned p = 1;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::vector<PropertyResult> properties;

    [[nodiscard]] bool passed() const {
        for (const auto& r : properties)
            if (!r.passed())
                return false;
        return true;
    }

    [[nodiscard]] const PropertyResult& at(const std::string& name) const {
        for (const auto& r : properties)
            if (r.name == name)
                return r;
        throw Error(ErrorCode::BadParameter, "no property named '" + name + "'");
    }
};

struct SuiteOptions {
    TransportSolver solver = solve_ot;
    std::size_t max_counterexamples = 5;
    std::size_t curve_samples = 8;
    Rational genericity_epsilon = Rational(1, 10);
    unsigned triangle_digits = 40;
};

enum class TriangleOutcome { Holds, HoldsAtPrecision, Violated };

/// cost_xz^(1/p) <= cost_xy^(1/p) + cost_yz^(1/p). Exact for p <= 2 and for
/// rational roots; otherwise decided by 10^−digits root brackets, with
/// undecidable near-equalities reported separately.
inline TriangleOutcome triangle_check(const Rational& xz, const Rational& xy, const Rational& yz, unsigned p,
                                      unsigned digits = 40) {
    if (p == 1)
        return xz <= xy + yz ? TriangleOutcome::Holds : TriangleOutcome::Violated;
    if (p == 2) {
        // √a <= √b + √c ⟺ a − b − c <= 2√(bc).
        Rational lhs = xz - xy - yz;
        if (lhs <= 0 || lhs * lhs <= 4 * xy * yz)
            return TriangleOutcome::Holds;
        return TriangleOutcome::Violated;
    }
    auto a = exact_root(xz, p), b = exact_root(xy, p), c = exact_root(yz, p);
    if (a && b && c)
        return *a <= *b + *c ? TriangleOutcome::Holds : TriangleOutcome::Violated;
    auto [a_lo, a_hi] = root_bracket(xz, p, digits);
    auto [b_lo, b_hi] = root_bracket(xy, p, digits);
    auto [c_lo, c_hi] = root_bracket(yz, p, digits);
    if (a_hi <= b_lo + c_lo)
        return TriangleOutcome::Holds;
    if (a_lo > b_hi + c_hi)
        return TriangleOutcome::Violated;
    return TriangleOutcome::HoldsAtPrecision;
}

namespace detail {

class PropertyLog {
public:
    PropertyLog(std::string name, std::size_t cap) : cap_(cap) { result_.name = std::move(name); }

    void record(bool ok, const std::string& counterexample) {
        ++result_.checked;
        if (ok)
            return;
        ++result_.failed;
        if (result_.counterexamples.size() < cap_)
            result_.counterexamples.push_back(counterexample);
    }
    void note(std::string text) { result_.note = std::move(text); }
    PropertyResult take() { return std::move(result_); }

private:
    PropertyResult result_;
    std::size_t cap_;
};

// Sample i is an independent pair, a neighbouring pair or a low-cost pair
// for i ≡ 0, 1, 2 (mod 3).
inline std::vector<MeasurePair> suite_pairs(const Graph& g, const DistanceMatrix& d, Rng& rng, std::size_t n) {
    std::vector<MeasurePair> pairs;
    for (std::size_t i = 0; i < n; ++i) {
        switch (i % 3) {
        case 0: {
            Measure mu = random_measure(rng, g.size());
            pairs.emplace_back(std::move(mu), random_measure(rng, g.size()));
            break;
        }
        case 1: pairs.push_back(random_neighbouring_pair(rng, g)); break;
        default: pairs.push_back(random_local_pair(rng, d)); break;
        }
    }
    return pairs;
}

} // namespace detail

/// Runs every property check over n_samples seeded measure pairs on g.
/// Failures, including unexpected errors, are report entries; the function
/// itself only throws on invalid arguments.
inline SuiteReport run_rigidity_suite(const Graph& g, unsigned p, std::uint64_t seed, std::size_t n_samples,
                                      const SuiteOptions& options = {}) {
    if (p == 0)
        throw Error(ErrorCode::BadParameter, "exponent must be >= 1");
    SuiteReport report{g.size(), p, seed, n_samples};
    const DistanceMatrix d = shortest_path_matrix(g);
    const auto& solve = options.solver;
    const std::size_t cap = options.max_counterexamples;
    Rng rng(seed);
    const auto pairs = detail::suite_pairs(g, d, rng, n_samples);
    const auto autos = enumerate_automorphisms(g);

    auto show = [&](const Measure& m) { return describe(g, m); };
    auto show_pair = [&](const MeasurePair& pr) { return "mu=" + show(pr.first) + " nu=" + show(pr.second); };
    auto show_perm = [&](const Permutation& psi) {
        std::string s = "[";
        for (std::size_t i = 0; i < psi.size(); ++i)
            s += (i ? "," : "") + g.name(psi(i));
        return s + "]";
    };

    std::vector<Rational> cost(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i)
        cost[i] = solve(pairs[i].first, pairs[i].second, d, p).cost_p;

    {
        detail::PropertyLog log("dirac_embedding", cap);
        for (Vertex x = 0; x < g.size(); ++x)
            for (Vertex y = 0; y < g.size(); ++y) {
                Rational c = solve(dirac(x), dirac(y), d, p).cost_p;
                Rational expected(ipow(Integer(d(x, y)), p));
                log.record(c == expected, g.name(x) + "," + g.name(y) + ": cost " + to_string(c) + " expected " +
                                              to_string(expected));
            }
        report.properties.push_back(log.take());
    }
    {
        detail::PropertyLog log("symmetry", cap);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            Rational back = solve(pairs[i].second, pairs[i].first, d, p).cost_p;
            log.record(back == cost[i], show_pair(pairs[i]) + ": " + to_string(cost[i]) + " vs " + to_string(back));
        }
        report.properties.push_back(log.take());
    }
    {
        detail::PropertyLog log("identity_of_indiscernibles", cap);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& [mu, nu] = pairs[i];
            Rational self = solve(mu, mu, d, p).cost_p;
            log.record(self == 0 && ((cost[i] == 0) == (mu == nu)),
                       show_pair(pairs[i]) + ": cost " + to_string(cost[i]) + ", self cost " + to_string(self));
        }
        report.properties.push_back(log.take());
    }
    {
        detail::PropertyLog log("plan_validity", cap);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& [mu, nu] = pairs[i];
            auto r = solve(mu, nu, d, p);
            auto check = validate_coupling(r.plan);
            bool ok = check.ok && r.plan.source() == mu && r.plan.target() == nu &&
                      coupling_cost(r.plan, d, p) == r.cost_p;
            log.record(ok, show_pair(pairs[i]) + ": " + (check.ok ? "plan cost differs from cost_p" : check.report));
        }
        report.properties.push_back(log.take());
    }
    {
        detail::PropertyLog log("triangle_inequality", cap);
        std::size_t near_equal = 0;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const Measure& x = pairs[i].first;
            const Measure& y = pairs[i].second;
            const Measure& z = pairs[(i + 1) % pairs.size()].first;
            Rational xz = solve(x, z, d, p).cost_p;
            Rational yz = solve(y, z, d, p).cost_p;
            auto outcome = triangle_check(xz, cost[i], yz, p, options.triangle_digits);
            near_equal += outcome == TriangleOutcome::HoldsAtPrecision;
            log.record(outcome != TriangleOutcome::Violated,
                       "x=" + show(x) + " y=" + show(y) + " z=" + show(z) + ": costs " + to_string(xz) + ", " +
                           to_string(cost[i]) + ", " + to_string(yz));
        }
        log.note(std::to_string(near_equal) + " decided at 1e-" + std::to_string(options.triangle_digits) +
                 " precision");
        report.properties.push_back(log.take());
    }
    {
        detail::PropertyLog log("oracle_equivalence", cap);
        std::size_t skipped = 0;
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& [mu, nu] = pairs[i];
            if (mu.support_size() * nu.support_size() > 16) {
                ++skipped;
                continue;
            }
            Rational oracle = oracle_ot(mu, nu, d, p);
            log.record(oracle == cost[i], show_pair(pairs[i]) + ": solver " + to_string(cost[i]) + ", oracle " +
                                              to_string(oracle));
        }
        log.note(std::to_string(skipped) + " pairs beyond the 4x4 oracle bound");
        report.properties.push_back(log.take());
    }
    {
        detail::PropertyLog log("lower_bound", cap);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& [mu, nu] = pairs[i];
            bool ok = true;
            for (Vertex x = 0; x < g.size(); ++x)
                ok = ok && cost[i] >= abs(nu[x] - mu[x]);
            log.record(ok, show_pair(pairs[i]) + ": cost " + to_string(cost[i]));
        }
        report.properties.push_back(log.take());
    }
    {
        detail::PropertyLog log("interpolation_membership", cap);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& [mu, nu] = pairs[i];
            for (const Rational s : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
                Measure xi = interpolate(mu, nu, s);
                Rational from_mu = solve(mu, xi, d, p).cost_p;
                Rational to_nu = solve(xi, nu, d, p).cost_p;
                bool ok = from_mu <= s * cost[i] && to_nu <= (1 - s) * cost[i];
                log.record(ok, show_pair(pairs[i]) + " s=" + to_string(s) + ": " + to_string(from_mu) + ", " +
                                   to_string(to_nu) + " vs cost " + to_string(cost[i]));
            }
        }
        report.properties.push_back(log.take());
    }
    {
        detail::PropertyLog log("pushforward_isometry", cap);
        for (const auto& psi : autos) {
            auto r = verify_pushforward_isometry(g, psi, pairs, p, solve);
            std::vector<const PushforwardMismatch*> by_pair(pairs.size(), nullptr);
            for (const auto& m : r.mismatches)
                by_pair[m.pair_index] = &m;
            for (std::size_t i = 0; i < pairs.size(); ++i) {
                const auto* m = by_pair[i];
                log.record(!m, m ? "psi=" + show_perm(psi) + " " + show_pair(pairs[i]) + ": " + to_string(m->cost) +
                                       " vs " + to_string(m->pushed_cost)
                                 : std::string());
            }
        }
        report.properties.push_back(log.take());
    }
    {
        detail::PropertyLog log("pushforward_homomorphism", cap);
        for (std::size_t a = 0; a < autos.size(); ++a)
            for (std::size_t b = 0; b < autos.size(); ++b) {
                const Permutation composed = compose(autos[a], autos[b]);
                for (const auto& pr : pairs) {
                    bool ok = pushforward(composed, pr.first) ==
                              pushforward(autos[a], pushforward(autos[b], pr.first));
                    log.record(ok, "psi=" + show_perm(autos[a]) + " phi=" + show_perm(autos[b]) + " mu=" +
                                       show(pr.first));
                }
            }
        report.properties.push_back(log.take());
    }
    {
        detail::PropertyLog log("neighbouring_preservation", cap);
        for (const auto& psi : autos)
            for (const auto& pr : pairs) {
                auto before = check_neighbouring(pr.first, pr.second, d);
                auto after = check_neighbouring(pushforward(psi, pr.first), pushforward(psi, pr.second), d);
                bool ok = before.has_value() == after.has_value() && (!before || before->alpha == after->alpha);
                log.record(ok, "psi=" + show_perm(psi) + " " + show_pair(pr));
            }
        report.properties.push_back(log.take());
    }

    std::vector<std::optional<NeighbouringCertificate>> certs;
    for (const auto& [mu, nu] : pairs)
        certs.push_back(check_neighbouring(mu, nu, d));
    {
        detail::PropertyLog log("certificate_soundness", cap);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (!certs[i])
                continue;
            const auto& c = *certs[i];
            bool ok = c.source() == pairs[i].first && c.target() == pairs[i].second && d(c.u, c.v) == 1 &&
                      c.alpha > 0 && c.alpha <= 1;
            log.record(ok, show_pair(pairs[i]));
        }
        report.properties.push_back(log.take());
    }
    {
        detail::PropertyLog log("neighbouring_distance", cap);
        for (std::size_t i = 0; i < pairs.size(); ++i)
            if (certs[i])
                log.record(cost[i] == certs[i]->alpha, show_pair(pairs[i]) + ": cost " + to_string(cost[i]) +
                                                           ", alpha " + to_string(certs[i]->alpha));
        report.properties.push_back(log.take());
    }
    {
        detail::PropertyLog completeness("witness_completeness", cap);
        detail::PropertyLog absence("witness_absence", cap);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& [mu, nu] = pairs[i];
            const Rational exact = solve_ot(mu, nu, d, p).cost_p;
            if (exact <= 0 || exact > 1)
                continue;
            std::string error;
            std::optional<BsWitness> w;
            try {
                w = bs_witness(g, mu, nu, d, p);
            } catch (const Error& e) {
                error = e.what();
            }
            if (certs[i]) {
                absence.record(error.empty() && !w, show_pair(pairs[i]) + (error.empty() ? "" : ": " + error));
                continue;
            }
            bool ok = error.empty() && w && w->xi != interpolate(mu, nu, Rational(1, 2)) &&
                      bs_membership(w->xi, mu, nu, Rational(1, 2), d, p);
            completeness.record(ok, show_pair(pairs[i]) + (error.empty() ? "" : ": " + error));
        }
        report.properties.push_back(completeness.take());
        report.properties.push_back(absence.take());
    }
    {
        detail::PropertyLog frames("teleport_frames", cap);
        detail::PropertyLog curve("teleport_neighbouring", cap);
        for (const auto& [mu, nu] : pairs) {
            auto support = mu.support();
            Vertex u = support[uniform_below(rng, support.size())];
            Vertex w = g.neighbours(u)[uniform_below(rng, g.degree(u))];
            if (uniform_below(rng, 2))
                std::swap(u, w);
            const std::string where = "mu=" + show(mu) + " u=" + g.name(u) + " w=" + g.name(w);
            auto frame = teleport_extremes(mu, u, w, d);
            bool ok = frame.c == mu[u] + mu[w] && frame.mu_star[w] == 0 && frame.mu_low[u] == 0 &&
                      frame.mu_star[u] == frame.c && frame.mu_low[w] == frame.c &&
                      teleport_curve(frame, 0) == frame.mu_star && teleport_curve(frame, frame.c) == frame.mu_low &&
                      teleport_curve(frame, mu[w]) == mu && extremes_neighbouring(frame, d).value_or(true);
            frames.record(ok, where);
            auto profile = curve_neighbouring_profile(frame, mu, sample_curve_times(rng, frame.c, options.curve_samples), d);
            for (const auto& s : profile.samples)
                if (s.status != CurveStatus::SkippedReflexive && s.status != CurveStatus::SkippedTooFar)
                    curve.record(s.status == CurveStatus::Certified, where + " t=" + to_string(s.t));
        }
        report.properties.push_back(frames.take());
        report.properties.push_back(curve.take());
    }
    {
        detail::PropertyLog log("genericity", cap);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const Measure& nu = pairs[i].second;
            std::string why;
            try {
                auto r = genericize(nu, options.genericity_epsilon, seed + i, d, p);
                auto check = check_genericity(r, d, p);
                if (!check.ok)
                    why = check.report;
            } catch (const Error& e) {
                why = e.what();
            }
            log.record(why.empty(), "nu=" + show(nu) + (why.empty() ? "" : ": " + why));
        }
        report.properties.push_back(log.take());
    }
    return report;
}

} // namespace wgraph

#endif
